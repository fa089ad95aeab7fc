"""
Brute-force verification engine for finite modules and complexes.

Everything here works element by element on explicit tables. The only thing read
from the presentation calculus is the literal relation and boundary matrices, so
an agreement between the two paths is an independent confirmation.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime

from core.complexes.chain_complex import ChainComplex
from core.graded.graded_bridge import GradedAModule, phi
from core.modules.dimensions import form_from_elementary
from core.modules.fp_module import CanonicalForm, FPModule, lcm
from resources.config import get_settings
from shared.errors import (
    InvariantViolationError,
    OracleBoundError,
    PreconditionError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _check_search(count: int, what: str) -> None:
    bound = get_settings().oracle_search_bound
    if count > bound:
        raise OracleBoundError(f"{what} needs {count} candidates, above the search bound {bound}")


def _add(a: Vector, b: Vector, e: int) -> Vector:
    return tuple((x + y) % e for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class FiniteRingTable:
    name: str
    add: np.ndarray
    mul: np.ndarray
    one: int

    @property
    def size(self) -> int:
        return self.add.shape[0]

    @classmethod
    def integers_mod(cls, e: int) -> "FiniteRingTable":
        values = np.arange(e)
        return cls(
            f"Z/{e}",
            (values[:, None] + values[None, :]) % e,
            (values[:, None] * values[None, :]) % e,
            1 % e,
        )

    @classmethod
    def dual_numbers(cls) -> "FiniteRingTable":
        """Z/2[x]/(x²); element a + bx has index a + 2b."""
        pairs = [(i & 1, i >> 1) for i in range(4)]
        add = np.array([[i ^ j for j in range(4)] for i in range(4)])
        mul = np.array(
            [[(a * c) % 2 + 2 * ((a * d + b * c) % 2) for c, d in pairs] for a, b in pairs]
        )
        return cls("Z/2[x]/(x^2)", add, mul, 1)


@dataclass(frozen=True, eq=False)
class FiniteModuleTable:
    """
    A finite module (Z/e)^gens / span(relations) with explicit tables. Element i
    is the coset of elements[i], the lexicographically least vector in it; the
    zero element has index 0.
    """

    ring: FiniteRingTable
    exponent: int
    gens: int
    elements: Tuple[Vector, ...]
    add: np.ndarray
    scalar: np.ndarray
    relations: Tuple[Vector, ...]
    labels: Dict[Vector, int] = field(repr=False)

    def __post_init__(self):
        self._check_axioms()

    @property
    def size(self) -> int:
        return len(self.elements)

    def label(self, vector: Sequence[int]) -> int:
        return self.labels[tuple(int(v) % self.exponent for v in vector)]

    def generators(self) -> Tuple[int, ...]:
        return tuple(
            self.label([1 if j == i else 0 for j in range(self.gens)]) for i in range(self.gens)
        )

    def multiple(self, k: int, element: int) -> int:
        return int(self.scalar[k % self.ring.size, element])

    def combine(self, coefficients: Sequence[int], images: Sequence[int]) -> int:
        acc = 0
        for c, x in zip(coefficients, images):
            if c % self.exponent:
                acc = int(self.add[acc, self.multiple(c, x)])
        return acc

    def killed_by(self, k: int) -> int:
        return int(np.count_nonzero(self.scalar[k % self.ring.size] == 0))

    def _check_axioms(self) -> None:
        a, s, n = self.add, self.scalar, self.size
        idx = np.arange(n)
        ring = self.ring
        checks = {
            "commutativity": (a == a.T).all(),
            "identity": (a[0] == idx).all(),
            "inverses": (a == 0).any(axis=1).all(),
            "associativity": (
                a[a[:, :, None], idx[None, None, :]] == a[idx[:, None, None], a[None, :, :]]
            ).all(),
            "r(a+b) = ra+rb": (s[:, a] == a[s[:, :, None], s[:, None, :]]).all(),
            "(r+s)a = ra+sa": (s[ring.add] == a[s[:, None, :], s[None, :, :]]).all(),
            "(rs)a = r(sa)": (
                s[ring.mul] == s[np.arange(ring.size)[:, None, None], s[None, :, :]]
            ).all(),
            "1a = a": (s[ring.one] == idx).all(),
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise InvariantViolationError(f"Module table fails: {', '.join(failed)}")


def _span(generators: Sequence[Vector], e: int, dim: int) -> List[Vector]:
    members = {(0,) * dim}
    frontier = list(members)
    while frontier:
        reached = []
        for v in frontier:
            for g in generators:
                w = _add(v, g, e)
                if w not in members:
                    members.add(w)
                    reached.append(w)
        frontier = reached
    return sorted(members)


def _tabulate(
    e: int, gens: int, reps: List[Vector], labels: Dict[Vector, int], relations: Tuple[Vector, ...]
) -> FiniteModuleTable:
    ring = FiniteRingTable.integers_mod(e)
    n = len(reps)
    add = np.array(
        [[labels[_add(a, b, e)] for b in reps] for a in reps], dtype=np.int64
    ).reshape(n, n)
    scalar = np.array(
        [[labels[tuple(k * x % e for x in v)] for v in reps] for k in range(ring.size)],
        dtype=np.int64,
    ).reshape(ring.size, n)
    return FiniteModuleTable(ring, e, gens, tuple(reps), add, scalar, relations, labels)


def _scalar_exponent(fp: FPModule, exponent: Optional[int]) -> int:
    if not fp.ring.is_integers:
        if exponent is not None and exponent != fp.ring.modulus:
            raise PreconditionError(f"A module over {fp.ring} is tabulated over {fp.ring} itself")
        return fp.ring.modulus
    own = fp.canonical.torsion_exponent
    if exponent is None:
        return own
    if exponent % own:
        raise PreconditionError(f"{exponent} does not kill {fp}")
    return exponent


def translate(fp: FPModule, exponent: Optional[int] = None) -> FiniteModuleTable:
    """
    Element-level realization of a finite module. Over Z the scalars act through
    Z/exponent, which must kill the module; it defaults to the torsion exponent.
    """
    if not fp.canonical.is_finite:
        raise PreconditionError(f"The oracle tabulates finite modules only, got {fp}")
    settings = get_settings()
    e = _scalar_exponent(fp, exponent)
    if e > settings.oracle_ring_bound:
        raise OracleBoundError(f"Scalar ring Z/{e} exceeds the ring bound {settings.oracle_ring_bound}")
    _check_search(e**fp.gens, "ambient enumeration")
    relations = tuple(
        tuple(v % e for v in column) for column in fp.rels.lift().columns() if any(v % e for v in column)
    )
    span = _span(relations, e, fp.gens)
    labels: Dict[Vector, int] = {}
    reps: List[Vector] = []
    for v in itertools.product(range(e), repeat=fp.gens):
        if v in labels:
            continue
        index = len(reps)
        reps.append(v)
        for h in span:
            labels[_add(v, h, e)] = index
    if len(reps) > settings.oracle_module_bound:
        raise OracleBoundError(
            f"Module of size {len(reps)} exceeds the module bound {settings.oracle_module_bound}"
        )
    return _tabulate(e, fp.gens, reps, labels, relations)


def _log(count: int, p: int) -> int:
    k = 0
    while count > 1:
        count //= p
        k += 1
    return k


def _form_from_counts(order: int, killed: Callable[[int], int]) -> CanonicalForm:
    """
    Invariant factors of a finite abelian group from |{x : kx = 0}|: the rank of
    the p^j-torsion grows by the number of cyclic p-summands of order ≥ p^j.
    """
    pairs: List[Tuple[int, int]] = []
    for p, total in factorint(order).items():
        p = int(p)
        ranks = [0]
        while ranks[-1] < total:
            ranks.append(_log(killed(p ** len(ranks)), p))
        at_least = [ranks[j] - ranks[j - 1] for j in range(1, len(ranks))] + [0]
        for j in range(1, len(ranks)):
            pairs += [(p, j)] * (at_least[j - 1] - at_least[j])
    return form_from_elementary(pairs)


def table_form(t: FiniteModuleTable) -> CanonicalForm:
    return _form_from_counts(t.size, t.killed_by)


def _common_exponent(modules: Sequence[FPModule]) -> int:
    ring = modules[0].ring
    if not ring.is_integers:
        return ring.modulus
    return reduce(lcm, (m.canonical.torsion_exponent for m in modules), 1)


def enumerate_homs(m: FiniteModuleTable, n: FiniteModuleTable) -> List[Tuple[int, ...]]:
    """Every module map, as the images of the generators of m."""
    if m.exponent != n.exponent:
        raise RingMismatchError(f"Tables over Z/{m.exponent} and Z/{n.exponent}")
    _check_search(n.size**m.gens, "hom search")
    return [
        images
        for images in itertools.product(range(n.size), repeat=m.gens)
        if all(n.combine(rel, images) == 0 for rel in m.relations)
    ]


def evaluate(m: FiniteModuleTable, n: FiniteModuleTable, images: Sequence[int], element: int) -> int:
    return n.combine(m.elements[element], images)


def hom_count(m: FPModule, n: FPModule) -> int:
    e = _common_exponent([m, n])
    return len(enumerate_homs(translate(m, e), translate(n, e)))


def brute_tensor_size(m: FPModule, n: FPModule) -> int:
    """|M ⊗ N| = |Hom(M, N⁺)| and N⁺ ≅ N for finite modules."""
    return hom_count(m, n)


@dataclass(frozen=True)
class BruteExt:
    order: int
    form: CanonicalForm


def _extends(
    relations: Sequence[Vector], images: Sequence[int], e: int, dim: int, n: FiniteModuleTable
) -> bool:
    """Whether relation images extend additively over the span of the relations."""
    zero = (0,) * dim
    values = {zero: 0}
    frontier = [zero]
    while frontier:
        reached = []
        for v in frontier:
            x = values[v]
            for g, y in zip(relations, images):
                w, z = _add(v, g, e), int(n.add[x, y])
                if w in values:
                    if values[w] != z:
                        return False
                else:
                    values[w] = z
                    reached.append(w)
        frontier = reached
    return True


def brute_ext1(m: FPModule, n: FPModule) -> BruteExt:
    """
    Ext¹(M, N) = Hom(K, N) / restrictions of Hom(F, N) for the presentation
    0 → K → F → M → 0 with F free over the scalar ring. Over Z every extension of
    M by N is killed by exp(M)·exp(N), so working over that quotient is exact.
    """
    if m.ring != n.ring:
        raise RingMismatchError(f"{m.ring} and {n.ring}")
    if m.ring.is_integers:
        e = max(m.canonical.torsion_exponent * n.canonical.torsion_exponent, 1)
    else:
        e = m.ring.modulus
    mt, nt = translate(m, e), translate(n, e)
    relations = mt.relations
    _check_search(nt.size ** len(relations), "cocycle search")
    _check_search(nt.size**mt.gens, "coboundary search")
    cocycles = {
        images
        for images in itertools.product(range(nt.size), repeat=len(relations))
        if _extends(relations, images, e, mt.gens, nt)
    }
    coboundaries = {
        tuple(nt.combine(rel, a) for rel in relations)
        for a in itertools.product(range(nt.size), repeat=mt.gens)
    }
    if not coboundaries <= cocycles:
        raise InvariantViolationError("Restricted homs are not all cocycles")

    def killed(k: int) -> int:
        hits = sum(1 for v in cocycles if tuple(nt.multiple(k, x) for x in v) in coboundaries)
        return hits // len(coboundaries)

    order = len(cocycles) // len(coboundaries)
    result = BruteExt(order, _form_from_counts(order, killed))
    logger.debug("brute Ext¹(%s, %s) = %s", m, n, result.form)
    return result


def brute_syzygy_form(fp: FPModule) -> CanonicalForm:
    """Form of the kernel of the presentation's free cover, Z/m only."""
    if fp.ring.is_integers:
        raise PreconditionError("Syzygies over Z are free; the oracle checks them over Z/m")
    mt = translate(fp)
    span = _span(mt.relations, mt.exponent, mt.gens)
    e = mt.exponent
    return _form_from_counts(
        len(span), lambda k: sum(1 for v in span if not any(k * x % e for x in v))
    )


def brute_stable_syzygy_form(fp: FPModule) -> CanonicalForm:
    form = brute_syzygy_form(fp)
    exponents = {int(p): int(a) for p, a in factorint(fp.ring.modulus).items()}
    pairs = []
    for d in form.factors:
        pairs += [(int(p), int(a)) for p, a in factorint(d).items() if exponents[int(p)] != a]
    return form_from_elementary(pairs)


def enumerate_chain_maps(x: ChainComplex, y: ChainComplex) -> List[Dict[int, Tuple[int, ...]]]:
    """All chain maps, each as generator images per degree."""
    if x.ring != y.ring:
        raise RingMismatchError(f"{x.ring} and {y.ring}")
    degrees = range(min(x.lo, y.lo) - 1, max(x.hi, y.hi) + 1)
    e = _common_exponent([x.term(n) for n in degrees] + [y.term(n) for n in degrees])
    xt = {n: translate(x.term(n), e) for n in degrees}
    yt = {n: translate(y.term(n), e) for n in degrees}
    bx = {n: tuple(xt[n - 1].label(c) for c in x.boundary(n).mat.lift().columns()) for n in degrees[1:]}
    by = {n: tuple(yt[n - 1].label(c) for c in y.boundary(n).mat.lift().columns()) for n in degrees[1:]}
    candidates = {n: enumerate_homs(xt[n], yt[n]) for n in degrees}
    _check_search(prod(len(c) for c in candidates.values()), "chain map search")
    found = []
    for choice in itertools.product(*(candidates[n] for n in degrees)):
        f = dict(zip(degrees, choice))
        if all(
            evaluate(yt[n], yt[n - 1], by[n], f[n][i])
            == evaluate(xt[n - 1], yt[n - 1], f[n - 1], bx[n][i])
            for n in degrees[1:]
            for i in range(xt[n].gens)
        ):
            found.append(f)
    return found


@dataclass(frozen=True, eq=False)
class _FieldComplex:
    """A complex of F_p-vector spaces: dims[n] and ∂_n as dims[n-1] × dims[n] arrays."""

    p: int
    dims: Dict[int, int]
    boundaries: Dict[int, np.ndarray]

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def boundary(self, n: int) -> np.ndarray:
        if n in self.boundaries:
            return self.boundaries[n]
        return np.zeros((self.dim(n - 1), self.dim(n)), dtype=np.int64)

    @property
    def window(self) -> range:
        present = [n for n, d in self.dims.items() if d]
        if not present:
            return range(0, 0)
        return range(min(present), max(present) + 1)

    def dual(self) -> "_FieldComplex":
        """(Y⁺)_k = (Y_{-k-1})^*, ∂ transposed; degreewise signs do not change Ext orders."""
        dims = {-n - 1: d for n, d in self.dims.items()}
        boundaries = {-n: b.T.copy() for n, b in self.boundaries.items()}
        return _FieldComplex(self.p, dims, boundaries)

    def shift(self, k: int) -> "_FieldComplex":
        """Σ^k"""
        return _FieldComplex(
            self.p,
            {n + k: d for n, d in self.dims.items()},
            {n + k: b for n, b in self.boundaries.items()},
        )


def _field_complex(x: ChainComplex) -> _FieldComplex:
    ring = x.ring
    if ring.is_integers or not isprime(ring.modulus):
        raise PreconditionError(f"Complex extensions are enumerated over prime fields, not {ring}")
    if not all(t.is_free() for t in x.terms):
        raise PreconditionError("Terms must be presented without relations")
    dims = {n: x.term(n).gens for n in x.degrees()}
    boundaries = {
        n: np.array(x.boundary(n).mat.lift().to_rows(), dtype=np.int64).reshape(
            x.term(n - 1).gens, x.term(n).gens
        )
        for n in range(x.lo + 1, x.hi + 1)
    }
    return _FieldComplex(ring.modulus, dims, boundaries)


def _matrices(p: int, shapes: Sequence[Tuple[int, int]]):
    sizes = [r * c for r, c in shapes]
    for entries in itertools.product(range(p), repeat=sum(sizes)):
        blocks, offset = [], 0
        for (r, c), size in zip(shapes, sizes):
            blocks.append(np.array(entries[offset : offset + size], dtype=np.int64).reshape(r, c))
            offset += size
        yield blocks


def _twisting_data(x: _FieldComplex, y: _FieldComplex):
    """Degrees and shapes of h_n: X_n → Y_{n-1} and s_n: X_n → Y_n."""
    degrees = sorted(n for n, d in x.dims.items() if d)
    h_shapes = [(y.dim(n - 1), x.dim(n)) for n in degrees]
    s_shapes = [(y.dim(n), x.dim(n)) for n in degrees]
    return degrees, h_shapes, s_shapes


def _key(blocks: Sequence[np.ndarray], p: int) -> Tuple[int, ...]:
    return tuple(int(v) for b in blocks for v in (b % p).ravel())


def _coboundaries(x: _FieldComplex, y: _FieldComplex) -> set:
    p = x.p
    degrees, _, s_shapes = _twisting_data(x, y)
    _check_search(p ** sum(r * c for r, c in s_shapes), "coboundary search")
    found = set()
    for s in _matrices(p, s_shapes):
        by_degree = dict(zip(degrees, s))
        blocks = []
        for n in degrees:
            term = y.boundary(n) @ by_degree[n]
            if n - 1 in by_degree:
                term = term - by_degree[n - 1] @ x.boundary(n)
            blocks.append(term)
        found.add(_key(blocks, p))
    return found


def _cocycle_defect(x: _FieldComplex, y: _FieldComplex, h: Dict[int, np.ndarray], n: int):
    """(∂_Y h + h ∂_X) on X_n"""
    defect = y.boundary(n - 1) @ h[n]
    if n - 1 in h:
        defect = defect + h[n - 1] @ x.boundary(n)
    return defect


def _field_ext1(x: _FieldComplex, y: _FieldComplex) -> int:
    """
    Degreewise-split extensions 0 → Y → E → X → 0 with ∂_E = [[∂_Y, h], [0, ∂_X]];
    ∂_E² = 0 is ∂_Y h + h ∂_X = 0, and h, h + ∂_Y s − s ∂_X give isomorphic E.
    """
    p = x.p
    degrees, h_shapes, _ = _twisting_data(x, y)
    _check_search(p ** sum(r * c for r, c in h_shapes), "cocycle search")
    cocycles = 0
    for h in _matrices(p, h_shapes):
        by_degree = dict(zip(degrees, h))
        if all(not (_cocycle_defect(x, y, by_degree, n) % p).any() for n in degrees):
            cocycles += 1
    return cocycles // len(_coboundaries(x, y))


def brute_ext1_complexes(x: ChainComplex, y: ChainComplex) -> int:
    """|Ext¹(X, Y)| in Ch(R-Mod) over a prime field."""
    if x.ring != y.ring:
        raise RingMismatchError(f"{x.ring} and {y.ring}")
    return _field_ext1(_field_complex(x), _field_complex(y))


def _bar_tor1_orders(
    x: _FieldComplex, y: _FieldComplex, ext1: Callable[[_FieldComplex, _FieldComplex], int]
) -> Dict[int, int]:
    """|Tor₁(X, Y)_{-n-1}| = |Ext¹(X, Σ^{-n} Y⁺)| by character duality, for the A-side."""
    dual = y.dual()
    orders = {}
    if not x.window or not y.window:
        return orders
    for k in range(x.window.start + y.window.start - 1, x.window.stop + y.window.stop):
        n = -k - 1
        orders[k] = ext1(x, dual.shift(-n))
    return orders


def _layout(c: _FieldComplex, y: _FieldComplex, m: int) -> Tuple[Dict[int, int], int]:
    """Offsets of the summands C_k ⊗ Y_{m-k} inside (C ⊗ Y)_m."""
    offsets, total = {}, 0
    for k in c.window:
        size = c.dim(k) * y.dim(m - k)
        if size:
            offsets[k] = total
            total += size
    return offsets, total


def _place(target: np.ndarray, row: int, col: int, block: np.ndarray) -> None:
    target[row : row + block.shape[0], col : col + block.shape[1]] += block


def _tensor_boundary(c: _FieldComplex, y: _FieldComplex, m: int) -> np.ndarray:
    """∂_m on C ⊗ Y, Koszul-signed on the Y part."""
    rows, height = _layout(c, y, m - 1)
    cols, width = _layout(c, y, m)
    d = np.zeros((height, width), dtype=np.int64)
    for k, col in cols.items():
        if k - 1 in rows:
            _place(d, rows[k - 1], col, np.kron(c.boundary(k), np.eye(y.dim(m - k), dtype=np.int64)))
        if k in rows:
            sign = -1 if k % 2 else 1
            block = np.kron(np.eye(c.dim(k), dtype=np.int64), y.boundary(m - k))
            _place(d, rows[k], col, sign * block)
    return d % c.p


def _tensor_map(
    f: Dict[int, np.ndarray], a: _FieldComplex, b: _FieldComplex, y: _FieldComplex, m: int
) -> np.ndarray:
    """(f ⊗ 1_Y)_m for a chain map f: A → B given by its degree blocks."""
    rows, height = _layout(b, y, m)
    cols, width = _layout(a, y, m)
    t = np.zeros((height, width), dtype=np.int64)
    for k, col in cols.items():
        if k in rows and k in f:
            _place(t, rows[k], col, np.kron(f[k], np.eye(y.dim(m - k), dtype=np.int64)))
    return t % a.p


def _disk_cover(x: _FieldComplex):
    """
    P = ⊕_n D^n(X_n) onto X, (a, b) ↦ a + ∂b on P_n = X_n ⊕ X_{n+1}. Its kernel K has
    K_n = X_{n+1} and ∂^K = −∂^X, sitting in P through b ↦ (−∂b, b).
    """
    p = x.p
    degrees = range(x.window.start - 1, x.window.stop)
    cover_dims = {n: x.dim(n) + x.dim(n + 1) for n in degrees}
    cover_boundaries = {}
    for n in degrees[1:]:
        d = np.zeros((cover_dims[n - 1], cover_dims[n]), dtype=np.int64)
        _place(d, x.dim(n - 1), 0, np.eye(x.dim(n), dtype=np.int64))
        cover_boundaries[n] = d
    kernel_dims = {n: x.dim(n + 1) for n in degrees}
    kernel_boundaries = {n: (-x.boundary(n + 1)) % p for n in degrees[1:]}
    inclusion = {
        n: np.vstack([(-x.boundary(n + 1)) % p, np.eye(x.dim(n + 1), dtype=np.int64)])
        for n in degrees
    }
    cover = _FieldComplex(p, cover_dims, cover_boundaries)
    syzygies = _FieldComplex(p, kernel_dims, kernel_boundaries)
    return cover, syzygies, inclusion


def _column_span(mat: np.ndarray, p: int) -> List[Vector]:
    columns = [tuple(int(v) for v in mat[:, j]) for j in range(mat.shape[1])]
    return _span(columns, p, mat.shape[0])


def _bar_kernel_order(
    k: _FieldComplex, cover: _FieldComplex, inclusion: Dict[int, np.ndarray], y: _FieldComplex, m: int
) -> int:
    """|ker((K ⊗̄ Y)_m → (P ⊗̄ Y)_m)|: elements sent into B_m(P ⊗ Y), modulo B_m(K ⊗ Y)."""
    p = k.p
    _, size = _layout(k, y, m)
    _check_search(p**size, "bar-Tor₁ cycle search")
    t = _tensor_map(inclusion, k, cover, y, m)
    boundaries = set(_column_span(_tensor_boundary(cover, y, m + 1), p))
    preimage = 0
    for v in itertools.product(range(p), repeat=size):
        image = t @ np.array(v, dtype=np.int64) % p
        if tuple(int(e) for e in image) in boundaries:
            preimage += 1
    return preimage // len(_column_span(_tensor_boundary(k, y, m + 1), p))


def brute_bar_tor1(x: ChainComplex, y: ChainComplex) -> Dict[int, int]:
    """
    Cardinality of Tor̄₁(X, Y) in each degree, over a prime field. With P ↠ X a
    disk cover and K its kernel, Tor̄₁(X, Y) = ker(K ⊗̄ Y → P ⊗̄ Y) since P is
    projective; everything is counted element by element.
    """
    if x.ring != y.ring:
        raise RingMismatchError(f"{x.ring} and {y.ring}")
    fx, fy = _field_complex(x), _field_complex(y)
    if not fx.window or not fy.window:
        return {}
    cover, syzygies, inclusion = _disk_cover(fx)
    degrees = range(fx.window.start + fy.window.start - 1, fx.window.stop + fy.window.stop)
    return {m: _bar_kernel_order(syzygies, cover, inclusion, fy, m) for m in degrees}


class _GradedAction:
    """The action of A = Z/2[x]/(x²) on a graded module, as matrices on the total space."""

    RING = FiniteRingTable.dual_numbers()

    def __init__(self, c: _FieldComplex):
        self.degrees = list(c.window)
        self.offsets = {}
        total = 0
        for n in self.degrees:
            self.offsets[n] = total
            total += c.dim(n)
        self.total = total
        x_mat = np.zeros((total, total), dtype=np.int64)
        for n in self.degrees:
            if n - 1 in self.offsets:
                self.place(x_mat, n - 1, n, c.boundary(n))
        self.x = x_mat

    def place(self, target: np.ndarray, row_degree: int, col_degree: int, block: np.ndarray) -> None:
        r0, c0 = self.offsets[row_degree], self.offsets[col_degree]
        target[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] = block

    @staticmethod
    def act_on(element: int, x_mat: np.ndarray) -> np.ndarray:
        """a + bx acting through a·1 + b·x"""
        a, b = element & 1, element >> 1
        return (a * np.eye(x_mat.shape[0], dtype=np.int64) + b * x_mat) % 2

    def act(self, element: int) -> np.ndarray:
        return self.act_on(element, self.x)

    @classmethod
    def is_module(cls, x_mat: np.ndarray) -> bool:
        """(ab)·v = a·(b·v) and (a+b)·v = a·v + b·v for every pair of ring elements."""
        ring = cls.RING
        actions = [cls.act_on(e, x_mat) for e in range(ring.size)]
        return all(
            (actions[int(ring.mul[a, b])] == (actions[a] @ actions[b]) % 2).all()
            and (actions[int(ring.add[a, b])] == (actions[a] + actions[b]) % 2).all()
            for a in range(ring.size)
            for b in range(ring.size)
        )


def _graded_a_ext1(m: _FieldComplex, n: _FieldComplex) -> int:
    """
    Classes of graded A-module extensions 0 → N → E → M → 0, counted as orbits of
    the valid x-actions on N ⊕ M under the degree-0 automorphisms fixing N and M.
    """
    degrees, h_shapes, _ = _twisting_data(m, n)
    _check_search(2 ** sum(r * c for r, c in h_shapes), "graded A-extension search")
    joint = _FieldComplex(
        2,
        {d: n.dim(d) + m.dim(d) for d in set(n.dims) | set(m.dims)},
        {},
    )
    layout = _GradedAction(joint)
    valid = set()
    for h in _matrices(2, h_shapes):
        by_degree = dict(zip(degrees, h))
        x_mat = np.zeros((layout.total, layout.total), dtype=np.int64)
        for d in layout.degrees:
            if d - 1 not in layout.offsets:
                continue
            block = np.zeros((joint.dim(d - 1), joint.dim(d)), dtype=np.int64)
            nd, nd1 = n.dim(d), n.dim(d - 1)
            block[:nd1, :nd] = n.boundary(d)
            block[nd1:, nd:] = m.boundary(d)
            if d in by_degree:
                block[:nd1, nd:] = by_degree[d]
            layout.place(x_mat, d - 1, d, block)
        if _GradedAction.is_module(x_mat):
            valid.add(_key([by_degree[d] for d in degrees], 2))
    shifts = _coboundaries(m, n)
    orbits, seen = 0, set()
    for h in valid:
        if h in seen:
            continue
        orbits += 1
        for b in shifts:
            seen.add(tuple((u + v) % 2 for u, v in zip(h, b)))
    return orbits


def _graded_a_homs(m: _FieldComplex, n: _FieldComplex) -> int:
    """Degree-0 maps commuting with the action of every ring element."""
    degrees = [d for d in m.window if m.dim(d)]
    shapes = [(n.dim(d), m.dim(d)) for d in degrees]
    _check_search(2 ** sum(r * c for r, c in shapes), "graded A-hom search")
    source, target = _GradedAction(m), _GradedAction(n)
    count = 0
    for blocks in _matrices(2, shapes):
        f = np.zeros((target.total, source.total), dtype=np.int64)
        for d, block in zip(degrees, blocks):
            if d in target.offsets and block.size:
                r0, c0 = target.offsets[d], source.offsets[d]
                f[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] = block
        if all(
            ((f @ source.act(a)) % 2 == (target.act(a) @ f) % 2).all()
            for a in range(_GradedAction.RING.size)
        ):
            count += 1
    return count


def _a_side(m: GradedAModule) -> _FieldComplex:
    if m.base.is_integers or m.base.modulus != 2:
        raise PreconditionError("The A-side oracle works over A = Z/2[x]/(x²)")
    return _field_complex(phi(m))


def brute_ext_graded_a(i: int, m: GradedAModule, n: GradedAModule) -> int:
    """|Ext^i_A(M, N)| for i ∈ {0, 1} by enumeration over the 4-element ring."""
    source, target = _a_side(m), _a_side(n)
    if i == 0:
        return _graded_a_homs(source, target)
    if i == 1:
        return _graded_a_ext1(source, target)
    raise PreconditionError("The A-side oracle enumerates Hom and Ext¹ only")


def brute_tor1_graded_a(m: GradedAModule, n: GradedAModule) -> Dict[int, int]:
    return _bar_tor1_orders(_a_side(m), _a_side(n), _graded_a_ext1)
