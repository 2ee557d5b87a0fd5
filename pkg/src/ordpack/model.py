"""Problem instances: boxes, container, per-dimension precedence arcs."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence


DEFAULT_DIM_NAMES = {1: ("x",), 2: ("x", "t"), 3: ("x", "y", "t")}


def default_dim_names(d: int) -> tuple[str, ...]:
    return DEFAULT_DIM_NAMES.get(d, tuple(f"x{i}" for i in range(d)))


class CycleError(ValueError):
    """Precedence arcs of one dimension contain a directed cycle."""

    def __init__(self, dim: int, cycle: Sequence[int]):
        self.dim = dim
        self.cycle = tuple(cycle)
        path = " -> ".join(str(v) for v in self.cycle)
        super().__init__(f"precedence cycle in dimension {dim}: {path}")


@dataclass(frozen=True)
class Item:
    id: int
    widths: tuple[int, ...]
    label: str | None = None


@dataclass(frozen=True)
class Container:
    sizes: tuple[int, ...]


@dataclass(frozen=True, order=True)
class PrecedenceConstraint:
    """``before`` must end (in dimension ``dim``) no later than ``after`` starts."""

    dim: int
    before: int
    after: int


@dataclass(frozen=True)
class Instance:
    d: int
    items: tuple[Item, ...]
    container: Container
    constraints: tuple[PrecedenceConstraint, ...] = ()
    names: tuple[str, ...] = ()
    dim_names: tuple[str, ...] = ()
    objective_dim: int | None = None

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(str(it.id) for it in self.items))
        if not self.dim_names:
            object.__setattr__(self, "dim_names", default_dim_names(self.d))

    @property
    def n(self) -> int:
        return len(self.items)

    def width(self, v: int, dim: int) -> int:
        return self.items[v].widths[dim]

    def arcs(self, dim: int) -> list[tuple[int, int]]:
        return [(c.before, c.after) for c in self.constraints if c.dim == dim]

    def with_sizes(self, sizes: Sequence[int]) -> Instance:
        return replace(self, container=Container(tuple(int(s) for s in sizes)))

    def with_size(self, dim: int, size: int) -> Instance:
        sizes = list(self.container.sizes)
        sizes[dim] = size
        return self.with_sizes(sizes)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown item {name!r}") from None

    def dim_index(self, name: str) -> int:
        if name in self.dim_names:
            return self.dim_names.index(name)
        if name.isdigit() and int(name) < self.d:
            return int(name)
        raise KeyError(f"unknown dimension {name!r}")


def make_instance(
    widths: Iterable[Sequence[int]],
    sizes: Sequence[int],
    constraints: Iterable[tuple[int, int, int]] = (),
    names: Sequence[str] | None = None,
    dim_names: Sequence[str] | None = None,
    objective_dim: int | None = None,
) -> Instance:
    """Build an instance from plain tuples; constraints are ``(dim, before, after)``."""
    items = tuple(Item(i, tuple(int(w) for w in ws)) for i, ws in enumerate(widths))
    d = len(sizes)
    return Instance(
        d=d,
        items=items,
        container=Container(tuple(int(s) for s in sizes)),
        constraints=tuple(PrecedenceConstraint(*c) for c in constraints),
        names=tuple(names) if names is not None else (),
        dim_names=tuple(dim_names) if dim_names is not None else (),
        objective_dim=objective_dim,
    )


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else "; ".join(self.errors)


def find_cycle(n: int, arcs: Iterable[tuple[int, int]]) -> list[int] | None:
    """Return one directed cycle as a closed vertex list, or None."""
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        succ[a].append(b)
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    break
                if color[w] == 1:
                    cycle = [w]
                    u = v
                    while u != w:
                        cycle.append(u)
                        u = parent[u]
                    cycle.append(w)
                    cycle.reverse()
                    return cycle
            else:
                color[v] = 2
                stack.pop()
    return None


def validate(instance: Instance) -> ValidationReport:
    report = ValidationReport()
    d, n = instance.d, instance.n
    if d < 1:
        report.errors.append(f"dimension count must be positive, got {d}")
    if len(instance.container.sizes) != d:
        report.errors.append(
            f"container has {len(instance.container.sizes)} sizes, expected {d}"
        )
    for i, h in enumerate(instance.container.sizes):
        if h < 1:
            report.errors.append(f"container size {h} in dimension {i} must be >= 1")
    seen: set[int] = set()
    for pos, it in enumerate(instance.items):
        if it.id in seen:
            report.errors.append(f"duplicate item id {it.id}")
        seen.add(it.id)
        if it.id != pos:
            report.errors.append(f"item id {it.id} at position {pos} is not dense")
        if len(it.widths) != d:
            report.errors.append(f"item {it.id} has {len(it.widths)} widths, expected {d}")
            continue
        for i, w in enumerate(it.widths):
            if w < 1:
                report.errors.append(f"item {it.id} width {w} in dimension {i} must be >= 1")
            elif i < len(instance.container.sizes) and w > instance.container.sizes[i]:
                report.errors.append(
                    f"item {it.id} width {w} exceeds container size "
                    f"{instance.container.sizes[i]} in dimension {i}"
                )
    if len(set(instance.names)) != len(instance.names):
        report.errors.append("duplicate item names")
    for c in instance.constraints:
        if not 0 <= c.dim < d:
            report.errors.append(f"constraint {c} has invalid dimension")
        if not (0 <= c.before < n and 0 <= c.after < n):
            report.errors.append(f"constraint {c} references an unknown item")
        elif c.before == c.after:
            report.errors.append(f"constraint {c} is a self-loop")
    if report.ok:
        for i in range(d):
            cycle = find_cycle(n, instance.arcs(i))
            if cycle is not None:
                report.errors.append(str(CycleError(i, cycle)))
    return report


def closure_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Transitive closure of an acyclic arc set (reachability by DFS)."""
    arcs = list(arcs)
    cycle = find_cycle(n, arcs)
    if cycle is not None:
        raise CycleError(-1, cycle)
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in arcs:
        succ[a].add(b)
    out: set[tuple[int, int]] = set()
    for s in range(n):
        seen: set[int] = set()
        stack = list(succ[s])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v])
        out.update((s, v) for v in seen)
    return out


def transitive_closure(instance: Instance) -> Instance:
    constraints: list[PrecedenceConstraint] = []
    for i in range(instance.d):
        try:
            closed = closure_arcs(instance.n, instance.arcs(i))
        except CycleError as err:
            raise CycleError(i, err.cycle) from None
        # keep original arcs first, then the implied ones in sorted order
        original = list(dict.fromkeys(instance.arcs(i)))
        extra = sorted(closed.difference(original))
        constraints.extend(PrecedenceConstraint(i, a, b) for a, b in original + extra)
    return replace(instance, constraints=tuple(constraints))
