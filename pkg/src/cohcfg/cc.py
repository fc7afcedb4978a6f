"""Coherent configurations as dense color matrices.

A configuration on n points is an n x n integer matrix assigning each
ordered pair a color (basis relation id).  Canonical ids sort classes by
(reflexive first, valency ascending, least cell in row-major order), so
any two constructions of the same partition serialize identically.
"""

import numpy as np

from .errors import UsageError, IntegrityError, ResourceLimitError, ColorActionError
from .report import VerificationReport

TENSOR_RANK_LIMIT = 256


def first_occurrence_relabel(colors):
    """Relabel classes by order of first appearance (row-major scan).

    Two matrices describe the same partition of the cells exactly when
    their relabelings are equal arrays.
    """
    colors = np.asarray(colors)
    vals, first, inv = np.unique(colors, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty(len(vals), dtype=np.int64)
    rank[order] = np.arange(len(vals))
    return rank[inv].reshape(colors.shape)


def same_partition(a, b):
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    return np.array_equal(first_occurrence_relabel(a), first_occurrence_relabel(b))


def canonicalize_colors(colors):
    """Canonical ids: reflexive classes first, then valency, then least cell."""
    colors = np.asarray(colors)
    n = colors.shape[0]
    vals, first, inv = np.unique(colors, return_index=True, return_inverse=True)
    M = inv.reshape(n, n)
    r = len(vals)
    first_rows = first // n
    reflexive = np.zeros(r, dtype=bool)
    reflexive[M[np.arange(n), np.arange(n)]] = True
    valency = np.zeros(r, dtype=np.int64)
    for a in range(n):
        row_classes, counts = np.unique(M[a], return_counts=True)
        sel = first_rows[row_classes] == a
        valency[row_classes[sel]] = counts[sel]
    # lexsort uses the last key as primary: (reflexive first, valency, first cell)
    order = np.lexsort((first, valency, (~reflexive).astype(np.int64)))
    rank = np.empty(r, dtype=np.int64)
    rank[order] = np.arange(r)
    return rank[M]


class CoherentConfiguration:
    """Color-matrix rainbow with cached fiber, valency and tensor data.

    Immutable after construction; all caches are derived and write-once.
    Construction canonicalizes ids but does not prove coherence; use
    ``validate`` for that.
    """

    def __init__(self, colors, canonical=False):
        colors = np.asarray(colors)
        if colors.ndim != 2 or colors.shape[0] != colors.shape[1]:
            raise UsageError("color matrix must be square")
        if colors.size and colors.min() < 0:
            raise UsageError("color ids must be nonnegative")
        if not canonical:
            colors = canonicalize_colors(colors)
        colors = np.ascontiguousarray(colors, dtype=np.int64)
        colors.setflags(write=False)
        self.colors = colors
        self.degree = colors.shape[0]
        self.rank = int(colors.max()) + 1 if colors.size else 0
        self._first = None
        self._valencies = None
        self._transpose = None
        self._tensor = None
        self._fibers = None

    # cached derived data

    def _first_cells(self):
        if self._first is None:
            _, first = np.unique(self.colors, return_index=True)
            self._first = (first // self.degree, first % self.degree)
        return self._first

    def first_pair(self, s):
        fr, fc = self._first_cells()
        return int(fr[s]), int(fc[s])

    @property
    def fiber_of_point(self):
        """Fiber index per point; fibers are indexed by their diagonal color."""
        return self.colors.diagonal()

    def reflexive_colors(self):
        return sorted(set(self.colors.diagonal().tolist()))

    def is_reflexive(self, s):
        fr, fc = self._first_cells()
        return fr[s] == fc[s]

    def fibers(self):
        if self._fibers is None:
            diag = self.colors.diagonal()
            self._fibers = [np.flatnonzero(diag == c)
                            for c in self.reflexive_colors()]
        return self._fibers

    def valencies(self):
        """n_s for every color (out-degree within the source fiber)."""
        if self._valencies is None:
            fr, _ = self._first_cells()
            v = np.zeros(self.rank, dtype=np.int64)
            for a in range(self.degree):
                row_classes, counts = np.unique(self.colors[a], return_counts=True)
                sel = fr[row_classes] == a
                v[row_classes[sel]] = counts[sel]
            self._valencies = v
        return self._valencies

    def transpose_map(self):
        """t with t[s] = s* (well defined only on valid rainbows)."""
        if self._transpose is None:
            fr, fc = self._first_cells()
            self._transpose = self.colors[fc, fr]
        return self._transpose

    def source_fiber(self, s):
        a, _ = self.first_pair(s)
        return int(self.colors[a, a])

    def target_fiber(self, s):
        _, b = self.first_pair(s)
        return int(self.colors[b, b])

    # validation

    def validate(self, level="axioms"):
        """Check rainbow axioms, and with level="full" exact coherence."""
        if level not in ("axioms", "full"):
            raise UsageError(f"unknown validation level {level!r}")
        rep = VerificationReport(claim="validate", params={"level": level})
        n = self.colors.shape[0]
        diag_set = set(self.colors.diagonal().tolist())
        off = self.colors[~np.eye(n, dtype=bool)]
        bad_off = np.isin(off, sorted(diag_set))
        rep.require("diagonal-classes-pure", not bad_off.any())
        # transpose of every class is a class
        fr, fc = self._first_cells()
        t = self.colors[fc, fr]
        trans_ok = np.array_equal(t[self.colors], self.colors.T)
        if not trans_ok:
            cell = np.argwhere(t[self.colors] != self.colors.T)[0]
            rep.require("transpose-closed", False, witness=tuple(int(x) for x in cell))
        else:
            rep.require("transpose-closed", True)
        rep.witnesses["degree"] = self.degree
        rep.witnesses["rank"] = self.rank
        if level == "full" and rep.passed:
            from .wl import coherence_violations
            bad = coherence_violations(self.colors)
            if bad:
                rep.require("coherent", False, witness=bad[0])
                rep.failures.extend(bad[1:])
            else:
                rep.require("coherent", True)
        return rep

    # intersection numbers

    def tensor(self, verify=None, seed=0):
        """Exact intersection tensor c[t, r, s].

        Computed from one representative pair per color and re-verified
        against extra representatives: every pair when the degree is at
        most 100 or verify="full", else ceil(log2 n) seeded random pairs
        per color.  A mismatch means the matrix was not coherent and
        raises IntegrityError naming the triple.
        """
        if self._tensor is not None and verify is None:
            return self._tensor
        if self.rank > TENSOR_RANK_LIMIT:
            raise ResourceLimitError(
                f"tensor guard: rank {self.rank} > {TENSOR_RANK_LIMIT}")
        n, r = self.degree, self.rank
        M = self.colors
        fr, fc = self._first_cells()
        values = np.zeros((r, r, r), dtype=np.int32)
        rep_sorted = []
        for t in range(r):
            a, b = int(fr[t]), int(fc[t])
            codes = M[a, :] * r + M[:, b]
            rep_sorted.append(np.sort(codes))
            values[t] = np.bincount(codes, minlength=r * r).reshape(r, r).astype(np.int32)
        full = verify == "full" or (verify is None and n <= 100)
        rng = np.random.default_rng(seed)
        flat = M.ravel()
        order = np.argsort(flat, kind="stable")
        bounds = np.searchsorted(flat[order], np.arange(r + 1))
        for t in range(r):
            cells = order[bounds[t]:bounds[t + 1]]
            if not full:
                k = min(len(cells), max(1, int(np.ceil(np.log2(max(n, 2))))))
                cells = rng.choice(cells, size=k, replace=False)
            for cell in cells:
                a, b = int(cell) // n, int(cell) % n
                codes = np.sort(M[a, :] * r + M[:, b])
                if not np.array_equal(codes, rep_sorted[t]):
                    bad = _differing_code(codes, rep_sorted[t])
                    triple = (int(bad) // r, int(bad) % r, t)
                    raise IntegrityError(
                        f"intersection number not constant on color {t}",
                        triple=triple)
        tensor = IntersectionTensor(values, self.valencies().copy(), self.degree)
        if verify is None or self._tensor is None:
            self._tensor = tensor
        return tensor

    def indistinguishing_numbers(self):
        """Per-color c(s) for irreflexive s, and the maximum c(X).

        c(s) counts the points relating identically to both ends of a
        pair of s; by coherence one representative pair suffices.  For
        small ranks the tensor route (sum of c_{r r*}^s) is cross-checked
        against the direct count.
        """
        M = self.colors
        fr, fc = self._first_cells()
        per_color = {}
        for s in range(self.rank):
            a, b = int(fr[s]), int(fc[s])
            if a == b:
                continue
            per_color[s] = int(np.count_nonzero(M[a, :] == M[b, :]))
        if self.rank <= 64 and self.degree > 1:
            tensor = self.tensor()
            tmap = self.transpose_map()
            for s, direct in per_color.items():
                via_tensor = int(values_sum_rr(tensor.values, tmap, s))
                if via_tensor != direct:
                    raise IntegrityError(
                        f"indistinguishing mismatch on color {s}: "
                        f"tensor {via_tensor} vs direct {direct}")
        overall = max(per_color.values()) if per_color else 0
        return per_color, overall

    # predicates

    def is_homogeneous(self):
        return len(self.reflexive_colors()) == 1

    def is_symmetric(self):
        t = self.transpose_map()
        return bool(np.array_equal(t, np.arange(self.rank)))

    def is_pseudocyclic(self):
        """(flag, k): all irreflexive valencies equal k and c(s) = k - 1."""
        if not self.is_homogeneous():
            raise UsageError("pseudocyclicity is defined for homogeneous configurations")
        if self.rank == 1:
            return True, 1
        v = self.valencies()
        irref = [s for s in range(self.rank) if not self.is_reflexive(s)]
        k = int(v[irref[0]])
        if any(int(v[s]) != k for s in irref):
            return False, None
        per_color, _ = self.indistinguishing_numbers()
        if any(per_color[s] != k - 1 for s in irref):
            return False, None
        return True, k

    def regular_points(self):
        """Points seeing every color at most once."""
        out = []
        for a in range(self.degree):
            _, counts = np.unique(self.colors[a], return_counts=True)
            if counts.max() <= 1:
                out.append(a)
        return out

    def is_partly_regular(self):
        pts = self.regular_points()
        return (len(pts) > 0, pts)

    def is_semiregular(self):
        return bool((self.valencies() == 1).all())

    def is_discrete(self):
        return self.rank == self.degree * self.degree

    def is_trivial_scheme(self):
        return self.is_homogeneous() and self.rank <= 2

    # constructions

    def restriction(self, points):
        """Induced configuration on a union of fibers."""
        points = np.asarray(sorted(set(int(p) for p in points)))
        if points.size and (points.min() < 0 or points.max() >= self.degree):
            raise UsageError("restriction points out of range")
        chosen = set(points.tolist())
        for fiber in self.fibers():
            got = chosen.intersection(fiber.tolist())
            if got and len(got) != len(fiber):
                raise UsageError("restriction set is not a union of fibers")
        sub = self.colors[np.ix_(points, points)]
        return CoherentConfiguration(sub)

    def matchings_between(self, fiber_i, fiber_j):
        """Colors of valency 1 in both directions from fiber i to fiber j."""
        fibers = self.fibers()
        if not (0 <= fiber_i < len(fibers) and 0 <= fiber_j < len(fibers)):
            raise UsageError("fiber index out of range")
        v = self.valencies()
        t = self.transpose_map()
        refl = self.reflexive_colors()
        out = []
        for s in range(self.rank):
            if self.source_fiber(s) == refl[fiber_i] and \
               self.target_fiber(s) == refl[fiber_j] and \
               v[s] == 1 and v[t[s]] == 1:
                out.append(s)
        return out

    def compose_colors(self, r, s):
        """Dot product r . s as a boolean cell matrix."""
        if self.target_fiber(r) != self.source_fiber(s):
            raise UsageError("dot product fibers do not compose")
        A = (self.colors == r)
        B = (self.colors == s)
        return (A.astype(np.int64) @ B.astype(np.int64)) > 0

    def relation_colors(self, cells):
        """Colors occurring on a boolean cell matrix."""
        return sorted(int(c) for c in np.unique(self.colors[cells]))

    def m_t(self, t):
        """Largest intersection number with target color t."""
        if self.is_reflexive(t):
            raise UsageError("m_t is defined for irreflexive colors")
        return int(self.tensor().values[t].max())

    def same_partition(self, other):
        return same_partition(self.colors, other.colors)

    def __repr__(self):
        return f"CoherentConfiguration(degree={self.degree}, rank={self.rank})"


def values_sum_rr(values, transpose, s):
    """Sum of c_{r r*}^s over colors r."""
    r = values.shape[0]
    idx = np.arange(r)
    return values[s][idx, transpose[idx]].sum()


def _differing_code(sorted_a, sorted_b):
    """First code whose multiplicity differs between two sorted arrays."""
    i = np.flatnonzero(sorted_a != sorted_b)[0]
    return sorted_a[i] if sorted_a[i] < sorted_b[i] else sorted_b[i]


class IntersectionTensor:
    """Dense intersection numbers c[t, r, s] with the valency vector."""

    def __init__(self, values, valencies, degree):
        self.values = values
        self.valencies = valencies
        self.degree = degree
        self.rank = values.shape[0]

    def row_sums_ok(self):
        """Sum over s of c_{rs}^t equals n_r whenever the fibers compose."""
        v = self.values.astype(np.int64)
        sums = v.sum(axis=2)  # [t, r]
        for t in range(self.rank):
            for r in range(self.rank):
                if sums[t, r] not in (0, int(self.valencies[r])):
                    return False, (t, r)
        return True, None

    def product_identity_ok(self):
        """Sum over t of c_{rs}^t n_t equals n_r n_s on composing fibers."""
        v = self.values.astype(np.int64)
        nt = self.valencies.astype(np.int64)
        lhs = np.tensordot(nt, v, axes=(0, 0))  # [r, s]
        for r in range(self.rank):
            for s in range(self.rank):
                expect = int(nt[r]) * int(nt[s])
                if lhs[r, s] not in (0, expect):
                    return False, (r, s)
        return True, None

    def triangle_identity_ok(self, transpose):
        """n_t c_{rs}^{t*} = n_r c_{st}^{r*} = n_s c_{tr}^{s*} (homogeneous)."""
        v = self.values.astype(np.int64)
        n = self.valencies.astype(np.int64)
        for r in range(self.rank):
            for s in range(self.rank):
                for t in range(self.rank):
                    x = n[t] * v[transpose[t], r, s]
                    y = n[r] * v[transpose[r], s, t]
                    z = n[s] * v[transpose[s], t, r]
                    if not (x == y == z):
                        return False, (r, s, t)
        return True, None


def algebraic_fusion(cfg, phi_generators):
    """Merge colors along orbits of tensor-preserving color permutations.

    Every generator must fix the reflexive classes setwise and preserve
    the intersection tensor; a violating generator is rejected with the
    offending triple.  Returns the fused configuration and the fusion map.
    """
    r = cfg.rank
    tensor = cfg.tensor()
    refl = set(cfg.reflexive_colors())
    gens = []
    for phi in phi_generators:
        phi = tuple(int(x) for x in phi)
        if sorted(phi) != list(range(r)):
            raise UsageError("fusion generator is not a permutation of colors")
        if any((c in refl) != (phi[c] in refl) for c in range(r)):
            raise UsageError("fusion generator does not fix reflexive classes setwise")
        idx = np.asarray(phi)
        permuted = tensor.values[np.ix_(idx, idx, idx)]
        if not np.array_equal(permuted, tensor.values):
            bad = np.argwhere(permuted != tensor.values)[0]
            raise UsageError(
                "fusion generator does not preserve the tensor; "
                f"triple {tuple(int(x) for x in bad)}")
        gens.append(phi)
    group = _perm_closure(gens, r)
    orbit_id = np.full(r, -1, dtype=np.int64)
    next_id = 0
    for c in range(r):
        if orbit_id[c] >= 0:
            continue
        orbit_id[c] = next_id
        stack = [c]
        while stack:
            x = stack.pop()
            for phi in gens:
                y = phi[x]
                if orbit_id[y] < 0:
                    orbit_id[y] = next_id
                    stack.append(y)
        next_id += 1
    fused_raw = orbit_id[cfg.colors]
    fused = CoherentConfiguration(fused_raw)
    color_to_fused = np.empty(r, dtype=np.int64)
    fr, fc = cfg._first_cells()
    for c in range(r):
        color_to_fused[c] = fused.colors[fr[c], fc[c]]
    fmap = FusionMap(tuple(int(x) for x in color_to_fused), [tuple(g) for g in group])
    return fused, fmap


def _perm_closure(gens, r):
    """All products of the generators, as tuples (small groups only)."""
    ident = tuple(range(r))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return sorted(seen)


class FusionMap:
    """Color partition induced by a group of algebraic automorphisms."""

    def __init__(self, color_to_fused, phi_group):
        self.color_to_fused = color_to_fused
        self.phi_group = phi_group

    @property
    def order(self):
        return len(self.phi_group)


def induced_color_action(cfg, g):
    """Color permutation induced by a point permutation, if any.

    Raises ColorActionError with a witness cell when g maps some color
    onto a set that is not a color.
    """
    g = np.asarray(tuple(g), dtype=np.int64)
    if g.shape[0] != cfg.degree or sorted(g.tolist()) != list(range(cfg.degree)):
        raise UsageError("not a permutation of the point set")
    M = cfg.colors
    P = M[np.ix_(g, g)]   # P[a, b] = color of (g a, g b)
    fr, fc = cfg._first_cells()
    phi = P[fr, fc]
    if not np.array_equal(phi[M], P):
        cell = np.argwhere(phi[M] != P)[0]
        raise ColorActionError(
            "point map does not permute the colors",
            witness=tuple(int(x) for x in cell))
    if sorted(phi.tolist()) != list(range(cfg.rank)):
        raise ColorActionError("point map collapses colors", witness=None)
    return tuple(int(x) for x in phi)
