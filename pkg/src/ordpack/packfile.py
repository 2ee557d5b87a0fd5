"""Plain-text instance files.

::

    # comment
    dims 2 x t
    container 100 *          # '*' marks the dimension to minimise
    item 11 7 53 [label]
    prec t 11 8              # item 11 ends before item 8 starts along t

A bare ``*`` stands for the sum of the item widths in that dimension; the
canonical writer always prints the size followed by ``*``.
"""

from __future__ import annotations

from pathlib import Path

from .model import Container, Instance, Item, PrecedenceConstraint, default_dim_names, validate


class ParseError(ValueError):
    def __init__(self, line: int, message: str, column: int | None = None):
        self.line = line
        self.column = column
        self.message = message
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}", col) from None
    return val


def _columns(raw: str) -> list[tuple[int, str]]:
    out, col, tok = [], 0, ""
    for k, ch in enumerate(raw + " "):
        if ch.isspace():
            if tok:
                out.append((col, tok))
                tok = ""
        else:
            if not tok:
                col = k + 1
            tok += ch
    return out


def parse_instance(text: str) -> Instance:
    d = None
    dim_names: tuple[str, ...] = ()
    sizes: list[int] | None = None
    objective = None
    star_only: list[int] = []
    items: list[tuple[str, tuple[int, ...], str | None, int]] = []
    precs: list[tuple[str, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = _columns(body)
        if not toks:
            continue
        col0, head = toks[0]
        args = toks[1:]
        if head == "dims":
            if d is not None:
                raise ParseError(lineno, "duplicate 'dims' line", col0)
            if not args:
                raise ParseError(lineno, "'dims' needs the number of dimensions", col0)
            d = _int(args[0][1], lineno, args[0][0], "dimension count")
            if d < 1:
                raise ParseError(lineno, "need at least one dimension", args[0][0])
            names = tuple(t for _, t in args[1:])
            if names and len(names) != d:
                raise ParseError(lineno, f"expected {d} dimension names, got {len(names)}", args[1][0])
            if len(set(names)) != len(names):
                raise ParseError(lineno, "dimension names must be distinct", args[1][0])
            dim_names = names or default_dim_names(d)
        elif d is None:
            raise ParseError(lineno, "the first directive must be 'dims'", col0)
        elif head == "container":
            if sizes is not None:
                raise ParseError(lineno, "duplicate 'container' line", col0)
            if len(args) != d:
                raise ParseError(lineno, f"expected {d} container sizes, got {len(args)}", col0)
            sizes = []
            for k, (col, tok) in enumerate(args):
                if tok.endswith("*"):
                    if objective is not None:
                        raise ParseError(lineno, "only one dimension can be marked with '*'", col)
                    objective = k
                    tok = tok[:-1]
                    if not tok:
                        star_only.append(k)
                        sizes.append(0)
                        continue
                sizes.append(_int(tok, lineno, col, "container size"))
        elif head == "item":
            if len(args) < d + 1:
                raise ParseError(lineno, f"'item' needs an id and {d} widths", col0)
            ident = args[0][1]
            widths = tuple(_int(t, lineno, c, "width") for c, t in args[1:d + 1])
            label = " ".join(t for _, t in args[d + 1:]) or None
            items.append((ident, widths, label, lineno))
        elif head == "prec":
            if len(args) != 3:
                raise ParseError(lineno, "'prec' needs a dimension name and two item ids", col0)
            precs.append((args[0][1], args[1][1], args[2][1], lineno))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}", col0)
    if d is None:
        raise ParseError(0, "missing 'dims' line")
    if sizes is None:
        raise ParseError(0, "missing 'container' line")
    ids = {}
    for k, (ident, _, _, lineno) in enumerate(items):
        if ident in ids:
            raise ParseError(lineno, f"duplicate item id {ident!r}")
        ids[ident] = k
    for k in star_only:
        sizes[k] = max(1, sum(w[k] for _, w, _, _ in items))
    cons = []
    for dim_name, a, b, lineno in precs:
        if dim_name in dim_names:
            dim = dim_names.index(dim_name)
        else:
            raise ParseError(lineno, f"unknown dimension {dim_name!r}")
        for ident in (a, b):
            if ident not in ids:
                raise ParseError(lineno, f"unknown item id {ident!r}")
        cons.append(PrecedenceConstraint(dim, ids[a], ids[b]))
    inst = Instance(
        d=d,
        items=tuple(Item(k, w, label) for k, (_, w, label, _) in enumerate(items)),
        container=Container(tuple(sizes)),
        constraints=tuple(cons),
        names=tuple(ident for ident, _, _, _ in items),
        dim_names=dim_names,
        objective_dim=objective,
    )
    report = validate(inst)
    if not report.ok:
        raise ParseError(0, "invalid instance: " + "; ".join(report.errors))
    return inst


def format_instance(instance: Instance, title: str | None = None) -> str:
    """Canonical text form (``parse_instance(format_instance(x))`` reproduces ``x``)."""
    lines = []
    if title:
        lines.append(f"# {title}")
    lines.append("dims " + " ".join([str(instance.d), *instance.dim_names]))
    sizes = [str(s) + ("*" if k == instance.objective_dim else "")
             for k, s in enumerate(instance.container.sizes)]
    lines.append("container " + " ".join(sizes))
    for v, it in enumerate(instance.items):
        row = ["item", instance.names[v], *map(str, it.widths)]
        if it.label:
            row.append(it.label)
        lines.append(" ".join(row))
    for c in instance.constraints:
        lines.append(f"prec {instance.dim_names[c.dim]} {instance.names[c.before]} {instance.names[c.after]}")
    return "\n".join(lines) + "\n"


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())
