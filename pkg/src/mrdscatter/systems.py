"""q-systems: F_q-subspaces of F_{q^m}^k and their evasiveness.

Three interchangeable ways of deciding whether U meets some h-dimensional
F_{q^m}-subspace H in too large an F_q-subspace:

* ``generic``: walk every H (via its annihilator) and take an F_q-rank;
* ``slope``:   k = 2, h = 1 only; bucket the nonzero vectors of U by slope;
* ``fiber``:   h = k - 1 only; tabulate, for every hyperplane ker(phi), how
  many u in U take each value phi(u). The same table prices a one-vector
  extension U + <v> with q table lookups per hyperplane.

They must agree; the test-suite cross-checks them exhaustively on small fields.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from mrdscatter import _elim
from mrdscatter.errors import (
    AmbientMismatch,
    BudgetExceeded,
    DependentBasis,
    NotScatteredInput,
    TowerMismatch,
    VerificationFailure,
)
from mrdscatter.gfarith import FieldTower
from mrdscatter.linalg import EXT, Mat, fq_dim_of_span, fq_expand, mat_kernel, mat_rank, mat_rref

DEFAULT_SUBSPACE_BUDGET = 10**8
DEFAULT_CANDIDATE_BUDGET = 10**7
PY_ENUM_LIMIT = 4096
FIBER_TABLE_LIMIT = 6 * 10**7
BLOCK_ENTRIES = 2**22


@dataclass(frozen=True)
class QSystem:
    tower: FieldTower
    k: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(self.tower.elem(a) for a in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise ValueError("a q-system needs at least one basis vector")
        if any(len(v) != self.k for v in basis):
            raise AmbientMismatch(f"basis vectors must have length k={self.k}")
        if len(basis) > self.k * self.tower.m:
            raise DependentBasis("more basis vectors than the F_q-dimension of the ambient space")
        if fq_dim_of_span(self.tower, basis) != len(basis):
            raise DependentBasis("basis vectors are F_q-dependent")

    @property
    def n(self):
        return len(self.basis)

    @property
    def size(self):
        return self.tower.q**self.n

    def is_nondegenerate(self):
        return mat_rank(Mat.from_cols(self.tower, self.basis)) == self.k

    def extended(self, v):
        return QSystem(self.tower, self.k, self.basis + (tuple(v),))

    def _fp_basis(self):
        F = self.tower
        if F.e == 1:
            return list(self.basis)
        return [tuple(F.mul(F.p**j, a) for a in b) for b in self.basis for j in range(F.e)]

    def elements(self):
        """All q^n vectors of U as tuples (pure Python)."""
        F = self.tower
        elems = [(0,) * self.k]
        for b in self._fp_basis():
            layer = [elems]
            for c in range(1, F.p):
                cb = tuple(F.mul(c, a) for a in b)
                layer.append([tuple(F.add(x, y) for x, y in zip(u, cb)) for u in elems])
            elems = [u for part in layer for u in part]
        return elems

    def np_elements(self):
        """All q^n vectors as a (q^n, k) int64 array; accelerated towers only."""
        F = self.tower
        arr = np.zeros((1, self.k), dtype=np.int64)
        for b in self._fp_basis():
            bv = np.array(b, dtype=np.int64)
            arr = np.concatenate([F.vadd(arr, F.vsmul(c, bv)) for c in range(F.p)], axis=0)
        return arr

    def contains(self, v):
        return fq_dim_of_span(self.tower, list(self.basis) + [list(v)]) == self.n

    def same_space(self, other):
        if self.tower != other.tower or self.k != other.k or self.n != other.n:
            return False
        return fq_dim_of_span(self.tower, list(self.basis) + list(other.basis)) == self.n

    def to_dict(self):
        F = self.tower
        return {"k": self.k, "n": self.n, "basis": [[F.coords(a) for a in v] for v in self.basis]}

    @classmethod
    def from_dict(cls, tower, d):
        return cls(tower, d["k"], tuple(tuple(tower.elem(a) for a in v) for v in d["basis"]))


def qsystem_build(tower, k, vectors):
    return QSystem(tower, k, tuple(tuple(v) for v in vectors))


def is_nondegenerate(U):
    return U.is_nondegenerate()


@dataclass(frozen=True)
class ExtSubspace:
    tower: FieldTower
    k: int
    basis: tuple

    def __post_init__(self):
        if any(len(v) != self.k for v in self.basis):
            raise AmbientMismatch("basis vectors must have length k")
        if self.basis and mat_rank(Mat.from_rows(self.tower, self.basis)) != len(self.basis):
            raise DependentBasis("ExtSubspace basis is F_{q^m}-dependent")

    @property
    def dim_h(self):
        return len(self.basis)

    def annihilator(self):
        """Rows phi with sum_j h_j phi_j = 0 for every h in H; H = common kernel."""
        M = Mat.from_rows(self.tower, self.basis, EXT, cols=self.k)
        return mat_kernel(M).to_rows()

    def to_dict(self):
        F = self.tower
        return {"k": self.k, "h": self.dim_h, "basis": [[F.coords(a) for a in v] for v in self.basis]}


def _rref_iter(order, k, h):
    """Reduced row-echelon h x k matrices over a field with ``order`` elements."""
    for pivots in itertools.combinations(range(k), h):
        pset = set(pivots)
        free = [(i, c) for i in range(h) for c in range(pivots[i] + 1, k) if c not in pset]
        for vals in itertools.product(range(order), repeat=len(free)):
            rows = [[0] * k for _ in range(h)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield rows


def subspace_iter(tower, k, h):
    """Every h-dimensional F_{q^m}-subspace of F_{q^m}^k exactly once."""
    if not 1 <= h < k:
        raise ValueError("need 1 <= h < k")
    for rows in _rref_iter(tower.order, k, h):
        yield ExtSubspace(tower, k, tuple(tuple(r) for r in rows))


def gaussian_binomial(s, h, q):
    if not 0 <= h <= s:
        raise ValueError("need 0 <= h <= s")
    num = den = 1
    for i in range(h):
        num *= q ** (s - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def bound_max_dim(k, m, h):
    """floor(km / (h+1)), the largest possible dimension of an h-scattered U."""
    return k * m // (h + 1)


def bound_max_dim_exact(k, m, h):
    """True when (h+1) divides km, i.e. the bound can be met with equality."""
    return k * m % (h + 1) == 0


def bound_maximal_lower(k, m, h):
    """Smallest dimension a maximally h-scattered subspace can have."""
    return -(-(k * m - h * m) // (h + 1)) + h


def _dot(F, a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s = F.add(s, F.mul(x, y))
    return s


def _check_ambient(U, H):
    if U.tower != H.tower:
        raise TowerMismatch("U and H live over different towers")
    if U.k != H.k:
        raise AmbientMismatch("U and H live in different ambient spaces")


def _weight_from_functionals(U, phis):
    F = U.tower
    images = [[_dot(F, phi, u) for phi in phis] for u in U.basis]
    return U.n - fq_dim_of_span(F, images)


def weight_dim(U, H):
    """dim_{F_q}(U cap H) = n - rank of u -> (phi(u))_{phi in ann(H)}."""
    _check_ambient(U, H)
    if H.dim_h >= U.k:
        return U.n
    return _weight_from_functionals(U, H.annihilator())


class Verdict(NamedTuple):
    ok: bool
    witness: Optional[ExtSubspace]
    checked: int


def _kernel_subspace(F, k, phis):
    M = Mat.from_rows(F, phis, EXT, cols=k)
    ker = mat_rref(mat_kernel(M))
    return ExtSubspace(F, k, tuple(tuple(r) for r in ker.to_rows()))


def _line(F, u):
    lead = next(a for a in u if a)
    inv = F.inv(lead)
    return ExtSubspace(F, len(u), (tuple(F.mul(inv, a) for a in u),))


def _check_budget(U, h, budget):
    count = gaussian_binomial(U.k, h, U.tower.order)
    if count > budget:
        raise BudgetExceeded(
            f"{count} subspaces of dimension {h} in F_{U.tower.q}^{U.tower.m}^{U.k} exceed budget {budget}"
        )
    return count


def _evasive_generic(U, h, r):
    F, k = U.tower, U.k
    checked = 0
    for phis in _rref_iter(F.order, k, k - h):
        checked += 1
        if _weight_from_functionals(U, phis) > r:
            return Verdict(False, _kernel_subspace(F, k, phis), checked)
    return Verdict(True, None, checked)


def _slope_keys_py(F, elems):
    if F.accelerated:
        lg, N = F._log, F.N
        return [
            (-1 if a == 0 else -2 if b == 0 else (lg[b] - lg[a]) % N)
            for a, b in elems if a or b
        ]
    keys = []
    for a, b in elems:
        if a == 0 and b == 0:
            continue
        if a == 0:
            keys.append(-1)
        elif b == 0:
            keys.append(-2)
        else:
            keys.append(F.div(b, a))
    return keys


def _evasive_slope(U, r):
    F = U.tower
    limit = F.q**r - 1
    if U.size <= PY_ENUM_LIMIT or not F.accelerated:
        elems = U.elements()
        counts = {}
        for key, u in zip(_slope_keys_py(F, elems), (u for u in elems if any(u))):
            c = counts.get(key, 0) + 1
            counts[key] = c
            if c > limit:
                return Verdict(False, _line(F, u), len(counts))
        return Verdict(True, None, len(counts))
    E = U.np_elements()
    a, b = E[:, 0], E[:, 1]
    nz = (a != 0) | (b != 0)
    a, b = a[nz], b[nz]
    la, lb = F.np_log[a], F.np_log[b]
    keys = np.where(a == 0, -1, np.where(b == 0, -2, (lb - la) % F.N))
    vals, counts = np.unique(keys, return_counts=True)
    if counts.max() <= limit:
        return Verdict(True, None, len(vals))
    bad = vals[np.argmax(counts > limit)]
    i = int(np.argmax(keys == bad))
    return Verdict(False, _line(F, (int(a[i]), int(b[i]))), len(vals))


def is_evasive(U, h, r, *, budget=DEFAULT_SUBSPACE_BUDGET, method="auto"):
    """(h, r)-evasiveness of U: every h-dim F_{q^m}-subspace meets U in dim <= r."""
    if not 1 <= h < U.k:
        raise ValueError("need 1 <= h < k")
    if r < h:
        raise ValueError("need h <= r")
    _check_budget(U, h, budget)
    if method == "auto":
        if U.k == 2 and h == 1:
            method = "slope"
        elif h == U.k - 1 and HyperplaneTables.fits(U):
            method = "fiber"
        else:
            method = "generic"
    if method == "generic":
        return _evasive_generic(U, h, r)
    if method == "slope":
        if not (U.k == 2 and h == 1):
            raise ValueError("slope method needs k = 2, h = 1")
        return _evasive_slope(U, r)
    if method == "fiber":
        if h != U.k - 1:
            raise ValueError("fiber method needs h = k - 1")
        return HyperplaneTables(U).evasive(r)
    raise ValueError(f"unknown method {method!r}")


def is_h_scattered(U, h, **kw):
    v = is_evasive(U, h, h, **kw)
    if v.ok and U.n > bound_max_dim(U.k, U.tower.m, h):
        raise VerificationFailure(f"h-scattered verdict for n={U.n} above km/(h+1)")
    return v


def is_scattered(U, **kw):
    return is_h_scattered(U, 1, **kw)


class HyperplaneTables:
    """Fibre counts N[H, c] = #{u in U : phi_H(u) = c} over all hyperplanes H.

    Hyperplanes are indexed by their normalised functional phi_H (first
    nonzero coordinate 1), in row-echelon enumeration order.
    """

    def __init__(self, U):
        F = U.tower
        if not F.accelerated:
            raise BudgetExceeded("fibre tables need an accelerated (enumerable) field")
        self.U, self.F = U, F
        self.phis = self._functionals(F, U.k)
        nH = len(self.phis)
        vals = np.zeros((nH, 1), dtype=np.int64)
        for b in U._fp_basis():
            img = np.zeros(nH, dtype=np.int64)
            for j, bj in enumerate(b):
                if bj:
                    img = F.vadd(img, F.vmul(self.phis[:, j], bj))
            vals = np.concatenate([F.vadd(vals, F.vsmul(c, img)[:, None]) for c in range(F.p)], axis=1)
        offs = (np.arange(nH, dtype=np.int64) * F.order)[:, None]
        self.counts = np.bincount((vals + offs).ravel(), minlength=nH * F.order).astype(np.int32)
        self.offs = offs[:, 0]
        self.zero = self.counts[self.offs]

    @staticmethod
    def fits(U):
        F = U.tower
        if not F.accelerated:
            return False
        nH = gaussian_binomial(U.k, 1, F.order)
        return nH * max(F.order, U.size) <= FIBER_TABLE_LIMIT

    @staticmethod
    def _functionals(F, k):
        blocks = []
        for j in range(k):
            free = k - 1 - j
            grids = np.indices((F.order,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
            blk = np.zeros((len(grids), k), dtype=np.int64)
            blk[:, j] = 1
            blk[:, j + 1:] = grids
            blocks.append(blk)
        return np.concatenate(blocks, axis=0)

    def hyperplane(self, i):
        return _kernel_subspace(self.F, self.U.k, [[int(x) for x in self.phis[i]]])

    def evasive(self, r):
        limit = self.F.q**r
        bad = np.nonzero(self.zero > limit)[0]
        if len(bad):
            return Verdict(False, self.hyperplane(int(bad[0])), int(bad[0]) + 1)
        return Verdict(True, None, len(self.phis))

    def images(self, v):
        F = self.F
        out = np.zeros(len(self.phis), dtype=np.int64)
        for j, vj in enumerate(v):
            if vj:
                out = F.vadd(out, F.vmul(self.phis[:, j], vj))
        return out

    def extension_totals(self, vals):
        """|(U + <v>) cap H| for each hyperplane (rows) and candidate (cols)."""
        F = self.F
        offs = self.offs[:, None]
        total = np.broadcast_to(self.zero[:, None], vals.shape).astype(np.int64)
        for mu in range(1, F.q):
            shifted = F.vneg(F.vsmul(mu, vals))
            total = total + self.counts[shifted + offs]
        return total


@dataclass
class ExtensionSearch:
    witness: Optional[tuple]
    candidates: int
    tested: int
    method: str

    @property
    def maximal(self):
        return self.witness is None


def _complement_positions(U):
    F = U.tower
    rows = [fq_expand(F, v) for v in U.basis]
    _, pivots = _elim.rref(rows, F.base)
    pset = set(pivots)
    return [t for t in range(U.k * F.m) if t not in pset]


def _candidate_vector(F, k, positions, coeffs):
    digits = [0] * (k * F.m)
    for t, c in zip(positions, coeffs):
        digits[t] = c
    return tuple(F.from_digits(digits[i * F.m:(i + 1) * F.m]) for i in range(k))


def _leading_one(coeffs):
    for c in coeffs:
        if c:
            return c == 1
    return False


def _search_generic(U, h, positions, reduce_scalars):
    F = U.tower
    tested = 0
    for coeffs in itertools.product(range(F.q), repeat=len(positions)):
        if not any(coeffs) or (reduce_scalars and not _leading_one(coeffs)):
            continue
        tested += 1
        v = _candidate_vector(F, U.k, positions, coeffs)
        if is_h_scattered(U.extended(v), h, method="generic").ok:
            return v, tested
    return None, tested


def _search_slope(U, positions, reduce_scalars):
    F = U.tower
    limit = F.q - 1
    elems = U.elements()
    base_counts = {}
    for key in _slope_keys_py(F, elems):
        base_counts[key] = base_counts.get(key, 0) + 1
    tested = 0
    for coeffs in itertools.product(range(F.q), repeat=len(positions)):
        if not any(coeffs) or (reduce_scalars and not _leading_one(coeffs)):
            continue
        tested += 1
        v = _candidate_vector(F, U.k, positions, coeffs)
        counts = dict(base_counts)
        ok = True
        for mu in range(1, F.q):
            mv = tuple(F.mul(mu, a) for a in v)
            shifted = [tuple(F.add(x, y) for x, y in zip(u, mv)) for u in elems]
            for key in _slope_keys_py(F, shifted):
                c = counts.get(key, 0) + 1
                if c > limit:
                    ok = False
                    break
                counts[key] = c
            if not ok:
                break
        if ok:
            return v, tested
    return None, tested


def _search_fiber(U, h, positions, reduce_scalars, workers):
    F = U.tower
    T = HyperplaneTables(U)
    nH = len(T.phis)
    r = len(positions)
    # images phi_H(w_j) of the complement basis vectors
    Q = []
    for t in positions:
        i, d = divmod(t, F.m)
        Q.append(F.vmul(T.phis[:, i], F.q**d))
    t_low = 0
    while t_low < r and nH * F.q ** (t_low + 1) <= BLOCK_ENTRIES:
        t_low += 1
    t_low = max(t_low, min(r, 1))
    n_high = r - t_low
    low = np.zeros((nH, 1), dtype=np.int64)
    low_coeffs = np.zeros((1, 0), dtype=np.int64)
    for j in reversed(range(n_high, r)):
        low = np.concatenate([F.vadd(low, F.vsmul(c, Q[j])[:, None]) for c in range(F.q)], axis=1)
        low_coeffs = np.concatenate(
            [np.concatenate([np.full((len(low_coeffs), 1), c), low_coeffs], axis=1) for c in range(F.q)], axis=0
        )
    nz = low_coeffs != 0
    first = np.where(nz.any(axis=1), low_coeffs[np.arange(len(low_coeffs)), nz.argmax(axis=1)], 0)
    low_valid_if_high_zero = (first == 1) if reduce_scalars else nz.any(axis=1)
    limit = F.q**h

    def run_block(high):
        if any(high):
            if reduce_scalars and not _leading_one(high):
                return None, 0
            valid = np.ones(len(low_coeffs), dtype=bool)
        else:
            valid = low_valid_if_high_zero
        hv = np.zeros(nH, dtype=np.int64)
        for j, c in enumerate(high):
            if c:
                hv = F.vadd(hv, F.vsmul(c, Q[j]))
        vals = F.vadd(hv[:, None], low)
        good = valid & ~(T.extension_totals(vals) > limit).any(axis=0)
        idx = np.nonzero(good)[0]
        if len(idx):
            i = int(idx[0])
            return tuple(high) + tuple(int(c) for c in low_coeffs[i]), int(valid[: i + 1].sum())
        return None, int(valid.sum())

    highs = list(itertools.product(range(F.q), repeat=n_high))
    tested = 0
    workers = max(1, int(workers))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(highs), workers):
            for coeffs, count in pool.map(run_block, highs[start:start + workers]):
                tested += count
                if coeffs is not None:
                    return _candidate_vector(F, U.k, positions, coeffs), tested
    return None, tested


def extendability_search(U, h, *, method="auto", budget=DEFAULT_CANDIDATE_BUDGET, workers=1,
                         reduce_scalars=True):
    """First v (in coset-representative order) with U + <v> still h-scattered.

    Candidates are vectors supported on the coordinates left free by the
    row-echelon form of U, i.e. one representative per coset of U, with the
    first nonzero coefficient normalised to 1 when ``reduce_scalars``.
    ``witness`` is None exactly when U is maximally h-scattered.
    """
    F = U.tower
    if not is_h_scattered(U, h).ok:
        raise NotScatteredInput(f"U is not {h}-scattered")
    positions = _complement_positions(U)
    cosets = F.q ** len(positions) - 1
    to_test = cosets // (F.q - 1) if reduce_scalars else cosets
    if to_test > budget:
        raise BudgetExceeded(f"{to_test} extension candidates exceed budget {budget}")
    if method == "auto":
        if h == U.k - 1 and HyperplaneTables.fits(U):
            method = "fiber"
        elif U.k == 2 and h == 1:
            method = "slope"
        else:
            method = "generic"
    if method == "fiber":
        if h != U.k - 1:
            raise ValueError("fiber method needs h = k - 1")
        witness, tested = _search_fiber(U, h, positions, reduce_scalars, workers)
    elif method == "slope":
        if not (U.k == 2 and h == 1):
            raise ValueError("slope method needs k = 2, h = 1")
        witness, tested = _search_slope(U, positions, reduce_scalars)
    elif method == "generic":
        witness, tested = _search_generic(U, h, positions, reduce_scalars)
    else:
        raise ValueError(f"unknown method {method!r}")

    if witness is not None:
        if not is_h_scattered(U.extended(witness), h).ok:
            raise VerificationFailure("extension witness does not keep U h-scattered")
    elif U.n < bound_maximal_lower(U.k, F.m, h):
        raise VerificationFailure(
            f"maximal verdict for n={U.n} below the lower bound {bound_maximal_lower(U.k, F.m, h)}"
        )
    covered = tested * (F.q - 1) if reduce_scalars else tested
    return ExtensionSearch(witness, covered, tested, method)


def is_maximally_scattered(U, h=1, **kw):
    return extendability_search(U, h, **kw).maximal


def fq_subspaces(q, dim, n):
    """Row-echelon bases of every n-dimensional subspace of F_q^dim."""
    return _rref_iter(q, dim, n)


def enumerate_scattered(tower, k, n, h=1, *, budget=DEFAULT_SUBSPACE_BUDGET):
    """Classify every n-dim h-scattered F_q-subspace of F_{q^m}^k.

    Returns (total, scattered, maximal, examples) where ``examples`` holds up to
    five maximal systems found (empty when none is maximal).
    """
    F = tower
    total = gaussian_binomial(k * F.m, n, F.q)
    if total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed budget {budget}")
    scattered = maximal = 0
    examples = []
    for rows in fq_subspaces(F.q, k * F.m, n):
        basis = tuple(
            tuple(F.from_digits(r[i * F.m:(i + 1) * F.m]) for i in range(k)) for r in rows
        )
        U = QSystem(F, k, basis)
        if not is_h_scattered(U, h).ok:
            continue
        scattered += 1
        method = "slope" if (k == 2 and h == 1) else "auto"
        if extendability_search(U, h, method=method).maximal:
            maximal += 1
            if len(examples) < 5:
                examples.append(U)
    return total, scattered, maximal, examples


def subspace_count(tower, k, h):
    return gaussian_binomial(k, h, tower.order)


def log_q(x, q):
    v = round(math.log(x, q))
    if q**v != x:
        raise ValueError(f"{x} is not a power of {q}")
    return v
