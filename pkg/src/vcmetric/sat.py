"""3-Partitioned-3-SAT formulas: file format, validation, square padding,
bucket coordinates and a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt
from pathlib import Path
from typing import Mapping

from .errors import NotSquare, ParseError, PartitionViolation

PART_NAMES = ("alpha", "beta", "gamma")
PART_TAGS = ("a", "b", "c")

Assignment = dict[int, bool]


@dataclass(frozen=True)
class PartitionedCnf:
    """A CNF whose variables are split into three equal parts, every clause
    touching each part at most once.  Literals are signed variable ids."""

    n_per_part: int
    parts: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    clauses: tuple[tuple[int, ...], ...]
    dummies: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.n_per_part < 1:
            raise PartitionViolation("each part needs at least one variable")
        if len(self.parts) != 3:
            raise PartitionViolation("exactly three parts are required")
        owner: dict[int, int] = {}
        for idx, part in enumerate(self.parts):
            if len(part) != self.n_per_part:
                raise PartitionViolation(
                    f"part {PART_TAGS[idx]} has {len(part)} variables, "
                    f"expected {self.n_per_part}"
                )
            for x in part:
                if x <= 0:
                    raise PartitionViolation(f"variable ids must be positive, got {x}")
                if x in owner:
                    raise PartitionViolation(f"variable {x} declared in two parts")
                owner[x] = idx
        for q, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise PartitionViolation(f"clause {q} is empty")
            if len(clause) > 3:
                raise PartitionViolation(f"clause {q} has more than three literals")
            touched: set[int] = set()
            for lit in clause:
                x = abs(lit)
                if lit == 0 or x not in owner:
                    raise PartitionViolation(f"clause {q} uses unassigned variable {x}")
                if owner[x] in touched:
                    raise PartitionViolation(
                        f"clause {q} touches part {PART_TAGS[owner[x]]} twice"
                    )
                touched.add(owner[x])
        if not self.dummies <= set(owner):
            raise PartitionViolation("dummy variables must belong to a part")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def variables(self) -> list[int]:
        return sorted(x for part in self.parts for x in part)

    def part_of(self, x: int) -> int:
        for idx, part in enumerate(self.parts):
            if x in part:
                return idx
        raise KeyError(x)

    @property
    def is_square(self) -> bool:
        return isqrt(self.n_per_part) ** 2 == self.n_per_part

    @property
    def root(self) -> int:
        """Bucket count (and bucket size) per part."""
        r = isqrt(self.n_per_part)
        if r * r != self.n_per_part:
            raise NotSquare(f"{self.n_per_part} variables per part is not a square")
        return r

    def bucket_of(self, x: int) -> tuple[int, int, int]:
        """``(part index, bucket i, position j)`` of a variable, 1-based i and j,
        row-major over the part's ids in ascending order."""
        part = self.part_of(x)
        pos = sorted(self.parts[part]).index(x)
        r = self.root
        return part, pos // r + 1, pos % r + 1

    def bucket_variables(self, part: int, i: int) -> list[int]:
        r = self.root
        ids = sorted(self.parts[part])
        return ids[(i - 1) * r : i * r]


def clause_satisfied(clause: tuple[int, ...], pi: Mapping[int, bool]) -> bool:
    return any(pi[abs(lit)] == (lit > 0) for lit in clause)


def satisfies(psi: PartitionedCnf, pi: Mapping[int, bool]) -> bool:
    return all(clause_satisfied(c, pi) for c in psi.clauses)


def pad_to_square(psi: PartitionedCnf, min_root: int = 1) -> PartitionedCnf:
    """Append fresh clause-free variables to every part until the part size is
    a perfect square of at least ``min_root ** 2``."""
    r = isqrt(psi.n_per_part)
    if r * r != psi.n_per_part:
        r += 1
    r = max(r, min_root)
    if r * r == psi.n_per_part:
        return psi
    extra = r * r - psi.n_per_part
    next_id = max(psi.variables) + 1
    parts = []
    dummies = set(psi.dummies)
    for part in psi.parts:
        fresh = tuple(range(next_id, next_id + extra))
        next_id += extra
        dummies.update(fresh)
        parts.append(tuple(part) + fresh)
    return PartitionedCnf(r * r, tuple(parts), psi.clauses, frozenset(dummies))


# With a single bucket per part both graph constructions lose the portal
# edges that tie a bucket to the others, and unsatisfiable formulas compile
# to YES instances.  Two buckets is the smallest sound size.
MIN_REDUCTION_ROOT = 2


def prepare_for_reduction(psi: PartitionedCnf, min_root: int = MIN_REDUCTION_ROOT) -> PartitionedCnf:
    """Check squareness, then pad with dummies up to ``min_root`` buckets."""
    psi.root  # raises NotSquare
    return pad_to_square(psi, min_root)


def brute_force_sat(psi: PartitionedCnf) -> Assignment | None:
    """Lexicographically first satisfying assignment (False < True, smallest
    variable id most significant), or None."""
    xs = psi.variables
    for values in product((False, True), repeat=len(xs)):
        pi = dict(zip(xs, values))
        if satisfies(psi, pi):
            return pi
    return None


# ---------------------------------------------------------------- file format


def dumps_pcnf(psi: PartitionedCnf) -> str:
    lines = [f"p pcnf {psi.n_per_part} {psi.m}"]
    for tag, part in zip(PART_TAGS, psi.parts):
        lines.append(f"c part {tag} " + " ".join(map(str, part)))
    if psi.dummies:
        lines.append("c dummy " + " ".join(map(str, sorted(psi.dummies))))
    for clause in psi.clauses:
        lines.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(lines) + "\n"


def loads_pcnf(text: str, path: str | None = None) -> PartitionedCnf:
    header: tuple[int, int] | None = None
    parts: dict[str, tuple[int, ...]] = {}
    dummies: set[int] = set()
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    pending_line = 0

    def ints(tokens: list[str], lineno: int) -> list[int]:
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise ParseError("expected integers", lineno, path) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if tokens[0] == "c":
            if len(tokens) >= 2 and tokens[1] == "part":
                if len(tokens) < 3 or tokens[2] not in PART_TAGS:
                    raise ParseError("part line must read 'c part a|b|c <ids...>'", lineno, path)
                if tokens[2] in parts:
                    raise ParseError(f"part {tokens[2]} declared twice", lineno, path)
                parts[tokens[2]] = tuple(ints(tokens[3:], lineno))
            elif len(tokens) >= 2 and tokens[1] == "dummy":
                dummies.update(ints(tokens[2:], lineno))
            continue
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate header line", lineno, path)
            if len(tokens) != 4 or tokens[1] != "pcnf":
                raise ParseError("header must read 'p pcnf <n_per_part> <m>'", lineno, path)
            n, m = ints(tokens[2:], lineno)
            header = (n, m)
            continue
        if header is None:
            raise ParseError("clause before 'p pcnf' header", lineno, path)
        for lit in ints(tokens, lineno):
            if not pending:
                pending_line = lineno
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ParseError("missing 'p pcnf' header", None, path)
    if pending:
        raise ParseError("clause not terminated by 0", pending_line, path)
    n, m = header
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses but {len(clauses)} were given", None, path)
    missing = [t for t in PART_TAGS if t not in parts]
    if missing:
        raise PartitionViolation(f"missing part declaration(s): {', '.join(missing)}")
    for q, clause in enumerate(clauses, start=1):
        if len(set(map(abs, clause))) != len(clause):
            raise PartitionViolation(f"clause {q} repeats a variable")
    return PartitionedCnf(
        n, (parts["a"], parts["b"], parts["c"]), tuple(clauses), frozenset(dummies)
    )


def parse_pcnf(path: str | Path) -> PartitionedCnf:
    p = Path(path)
    return loads_pcnf(p.read_text(encoding="utf-8"), str(p))


def write_pcnf(psi: PartitionedCnf, path: str | Path) -> None:
    Path(path).write_text(dumps_pcnf(psi), encoding="utf-8")
