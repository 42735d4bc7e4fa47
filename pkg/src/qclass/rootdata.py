"""Root systems B_n/D_n, class data and weight parametrization.

Weights live in the epsilon basis and are stored doubled, so the
half-integer entries of rho in the B series stay exact integers.  A
class of the orthogonal group is recorded combinatorially: the sizes of
the GL blocks, the rank m of the orthogonal block on the eigenvalue -1
and the rank p of the block on +1.  Highest weights are never stored
explicitly; the Cartan action q^(lambda, .) is delegated to a
ParamAssignment that maps each block to an invertible monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from qclass.coeff import Monomial, z_var, T_VAR


class ClassDataError(ValueError):
    """Invalid class datum; carries structured per-field errors."""

    def __init__(self, errors):
        self.errors = errors
        super().__init__("; ".join(e["message"] for e in errors))


@dataclass(frozen=True, slots=True)
class OrthoRank:
    N: int
    series: str  # 'B' (odd N) or 'D' (even N)
    n: int

    @staticmethod
    def from_N(N: int) -> "OrthoRank":
        if N < 5 or N == 6:
            raise ValueError(f"unsupported N={N}: need N = 5 or N >= 7")
        if N % 2:
            return OrthoRank(N, "B", (N - 1) // 2)
        return OrthoRank(N, "D", N // 2)


@dataclass(frozen=True, slots=True)
class WeightVec:
    """Vector in the epsilon basis; coords2 holds doubled coordinates."""

    coords2: tuple

    @staticmethod
    def from_eps(coords, n=None) -> "WeightVec":
        c = list(coords)
        if n is not None:
            c += [0] * (n - len(c))
        return WeightVec(tuple(2 * v for v in c))

    def __add__(self, other):
        return WeightVec(tuple(a + b for a, b in zip(self.coords2, other.coords2)))

    def __sub__(self, other):
        return WeightVec(tuple(a - b for a, b in zip(self.coords2, other.coords2)))

    def __neg__(self):
        return WeightVec(tuple(-a for a in self.coords2))

    def scaled(self, k: int) -> "WeightVec":
        return WeightVec(tuple(k * a for a in self.coords2))

    def ip(self, other) -> Fraction:
        """Standard inner product on epsilon coordinates."""
        return Fraction(
            sum(a * b for a, b in zip(self.coords2, other.coords2)), 4
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords2)

    def eps_coords(self):
        return tuple(Fraction(a, 2) for a in self.coords2)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.eps_coords()) + ")"


def eps(n: int, i: int) -> WeightVec:
    """The basis weight epsilon_i (1-based) in rank n."""
    c = [0] * n
    c[i - 1] = 2
    return WeightVec(tuple(c))


def zero_weight(n: int) -> WeightVec:
    return WeightVec((0,) * n)


@lru_cache(maxsize=None)
def simple_roots(rank: OrthoRank):
    """alpha_1..alpha_n; the last root is eps_n (B) or eps_{n-1}+eps_n (D)."""
    n = rank.n
    roots = [eps(n, i) - eps(n, i + 1) for i in range(1, n)]
    if rank.series == "B":
        roots.append(eps(n, n))
    else:
        roots.append(eps(n, n - 1) + eps(n, n))
    return tuple(roots)


def cartan_matrix(rank: OrthoRank):
    al = simple_roots(rank)
    return tuple(
        tuple(int(2 * ai.ip(aj) / ai.ip(ai)) for aj in al) for ai in al
    )


@lru_cache(maxsize=None)
def rho(rank: OrthoRank) -> WeightVec:
    """Half-sum of positive roots: rho_i = rho_1 - (i-1)."""
    rho1 = Fraction(2 * rank.n - 1, 2) if rank.series == "B" else Fraction(rank.n - 1)
    return WeightVec(tuple(int(2 * (rho1 - (i - 1))) for i in range(1, rank.n + 1)))


@lru_cache(maxsize=None)
def positive_roots(rank: OrthoRank):
    n = rank.n
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append(eps(n, i) - eps(n, j))
            out.append(eps(n, i) + eps(n, j))
        if rank.series == "B":
            out.append(eps(n, i))
    return tuple(out)


def root_coords(rank: OrthoRank, v: WeightVec):
    """Expansion of v in simple roots, or None if not an integer combo."""
    n = rank.n
    e = [Fraction(a, 2) for a in v.coords2]
    pref = []
    acc = Fraction(0)
    for x in e:
        acc += x
        pref.append(acc)
    if rank.series == "B":
        c = pref
    else:
        # c_j = prefix_j for j <= n-2; then
        # c_{n-1} + c_n = v_{n-1} + c_{n-2} and c_n - c_{n-1} = v_n
        c = pref[: n - 2]
        c_n2 = pref[n - 3] if n >= 3 else Fraction(0)
        cn = (e[n - 2] + c_n2 + e[n - 1]) / 2
        c = c + [cn - e[n - 1], cn]
    out = []
    for x in c:
        if x.denominator != 1 or x < 0:
            return None
        out.append(int(x))
    return tuple(out)


def weight_of_root_coords(rank: OrthoRank, c) -> WeightVec:
    al = simple_roots(rank)
    v = zero_weight(rank.n)
    for k, a in zip(c, al):
        if k:
            v = v + a.scaled(k)
    return v


@dataclass(frozen=True, slots=True)
class ClassData:
    """Combinatorial datum of a non-Levi class: (N, n_1..n_l, m, p)."""

    N: int
    gl_blocks: tuple
    m: int
    p: int

    @property
    def rank(self) -> OrthoRank:
        return OrthoRank.from_N(self.N)

    @property
    def ell(self) -> int:
        return len(self.gl_blocks)

    @property
    def n(self) -> int:
        return self.rank.n

    @property
    def P(self) -> int:
        return 2 * self.p + (self.N % 2)

    @property
    def shift(self) -> int:
        """Index shift of the embedded symmetric-case constructions."""
        return self.n - self.p - 2

    def block_sizes(self):
        return tuple(self.gl_blocks) + (self.m, self.p)

    def block_starts(self):
        starts = []
        acc = 0
        for s in self.block_sizes():
            starts.append(acc)
            acc += s
        return tuple(starts)

    def block_of(self, j: int) -> int:
        """1-based block index of position j (1-based)."""
        acc = 0
        for k, s in enumerate(self.block_sizes(), start=1):
            acc += s
            if j <= acc:
                return k
        raise ValueError(f"position {j} out of range")

    def boundaries(self):
        """Positions n_1, n_1+n_2, ..., n-p where f_alpha does not kill v."""
        out = []
        acc = 0
        for s in self.gl_blocks:
            acc += s
            out.append(acc)
        out.append(acc + self.m)
        return tuple(out)

    def is_symmetric(self) -> bool:
        return self.ell == 0

    def validate(self):
        errs = []
        if self.N < 5 or self.N == 6:
            errs.append(
                {
                    "field": "N",
                    "constraint": "N = 5 or N >= 7",
                    "message": f"N={self.N} out of range",
                }
            )
            return errs
        n = self.n
        if any(b < 1 for b in self.gl_blocks):
            errs.append(
                {
                    "field": "gl_blocks",
                    "constraint": "all block sizes >= 1",
                    "message": f"invalid gl blocks {self.gl_blocks}",
                }
            )
        if self.m < 2:
            errs.append(
                {
                    "field": "m",
                    "constraint": "m >= 2",
                    "message": f"m={self.m} too small",
                }
            )
        pmin = 2 if self.N % 2 == 0 else 0
        if self.p < pmin:
            errs.append(
                {
                    "field": "p",
                    "constraint": f"p >= {pmin} for this parity",
                    "message": f"p={self.p} too small for N={self.N}",
                }
            )
        if self.N % 2 == 0 and self.p == 1 and self.m == 2:
            errs.append(
                {
                    "field": "p",
                    "constraint": "boundary case p=1, m=2 excluded for even N",
                    "message": "excluded boundary class",
                }
            )
        if sum(self.gl_blocks) + self.m + self.p != n:
            errs.append(
                {
                    "field": "gl_blocks",
                    "constraint": "sum n_i + m + p = n",
                    "message": f"blocks {self.gl_blocks}+m={self.m}+p={self.p} != n={n}",
                }
            )
        return errs

    @staticmethod
    def make(N, gl_blocks=(), m=2, p=None) -> "ClassData":
        if p is None:
            p = OrthoRank.from_N(N).n - m - sum(gl_blocks)
        cls = ClassData(N, tuple(gl_blocks), m, p)
        errs = cls.validate()
        if errs:
            raise ClassDataError(errs)
        return cls

    @staticmethod
    def from_json(obj) -> "ClassData":
        errs = []
        for field, typ in (("N", int), ("m", int), ("p", int)):
            if not isinstance(obj.get(field), int):
                errs.append(
                    {
                        "field": field,
                        "constraint": "required integer",
                        "message": f"missing or non-integer {field!r}",
                    }
                )
        blocks = obj.get("gl_blocks", [])
        if not isinstance(blocks, list) or any(not isinstance(b, int) for b in blocks):
            errs.append(
                {
                    "field": "gl_blocks",
                    "constraint": "list of integers",
                    "message": "gl_blocks must be a list of integers",
                }
            )
        if errs:
            raise ClassDataError(errs)
        return ClassData.make(obj["N"], tuple(blocks), obj["m"], obj["p"])

    def to_json(self):
        return {
            "N": self.N,
            "gl_blocks": list(self.gl_blocks),
            "m": self.m,
            "p": self.p,
        }


def delta(cls: ClassData):
    """The root delta generating the extra reflection of the stabilizer.

    Returns (weight, root_coords, height); in epsilon coordinates this
    is always eps_{n-p-1} + eps_{n-p}.
    """
    n, p = cls.n, cls.p
    rank = cls.rank
    c = [0] * n
    c[n - p - 2] = 1  # alpha_{n-p-1}
    if rank.series == "B":
        for i in range(n - p, n + 1):
            c[i - 1] = 2
    else:
        for i in range(n - p, n - 1):
            c[i - 1] = 2
        c[n - 2] = 1
        c[n - 1] = 1
    coords = tuple(c)
    return weight_of_root_coords(rank, coords), coords, sum(coords)


def levi_simple_indices(cls: ClassData) -> frozenset:
    """Simple-root indices inside the Levi subalgebra (f_j v = 0 there)."""
    return frozenset(range(1, cls.n + 1)) - frozenset(nonlevi_indices(cls))


def nonlevi_indices(cls: ClassData):
    """Block-boundary indices: the simple roots not in the Levi part.

    For B with p = 0 the short root alpha_n is the m-block boundary and
    is already in the list; for D, p >= 2 keeps alpha_n inside so(2p).
    """
    return tuple(b for b in cls.boundaries() if b <= cls.n)


@lru_cache(maxsize=None)
def _levi_root_set(cls: ClassData):
    rank = cls.rank
    n = cls.n
    blocks = []
    acc = 0
    for s in cls.block_sizes():
        blocks.append(tuple(range(acc + 1, acc + s + 1)))
        acc += s
    gl_spans = blocks[:-1]
    so_span = blocks[-1]
    levi = set()
    for span in gl_spans:
        for i in span:
            for j in span:
                if i < j:
                    levi.add((eps(n, i) - eps(n, j)).coords2)
    for i in so_span:
        for j in so_span:
            if i < j:
                levi.add((eps(n, i) - eps(n, j)).coords2)
                levi.add((eps(n, i) + eps(n, j)).coords2)
        if rank.series == "B":
            levi.add(eps(n, i).coords2)
    return levi


@lru_cache(maxsize=None)
def nilradical_root_coords(cls: ClassData):
    """Root coordinates of the positive roots outside the Levi part."""
    rank = cls.rank
    levi = _levi_root_set(cls)
    out = []
    for r in positive_roots(rank):
        if r.coords2 not in levi:
            out.append(root_coords(rank, r))
    return tuple(sorted(out))


def kostant_dim(cls: ClassData, beta) -> int:
    """Dimension of the weight space at offset beta below the top.

    Counts multisets of nilradical roots summing to beta by direct
    enumeration; beta may be a WeightVec or a root-coordinate tuple.
    """
    if isinstance(beta, WeightVec):
        beta = root_coords(cls.rank, beta)
        if beta is None:
            return 0
    roots = nilradical_root_coords(cls)

    from functools import lru_cache as _lc

    @_lc(maxsize=None)
    def count(i, rem):
        if all(v == 0 for v in rem):
            return 1
        if i == len(roots):
            return 0
        r = roots[i]
        total = 0
        rem_l = list(rem)
        while True:
            total += count(i + 1, tuple(rem_l))
            if any(a < b for a, b in zip(rem_l, r)):
                break
            ok = True
            for k in range(len(rem_l)):
                rem_l[k] -= r[k]
                if rem_l[k] < 0:
                    ok = False
            if not ok:
                break
        return total

    return count(0, tuple(beta))


_ONE = Monomial()


@dataclass(frozen=True, slots=True)
class ParamAssignment:
    """Per-block Cartan monomials realizing q^(lambda, eps_j).

    GL blocks carry the formal parameters z_1..z_l; the m block carries
    either the generic parameter t or the exact specialization i*s^(-P)
    (so its square is -q^(-P)); the p block carries 1.
    """

    cls: ClassData
    mode: str  # 'generic' | 'specialized'

    @staticmethod
    def generic(cls: ClassData) -> "ParamAssignment":
        return ParamAssignment(cls, "generic")

    @staticmethod
    def specialized(cls: ClassData) -> "ParamAssignment":
        return ParamAssignment(cls, "specialized")

    def block_base(self, k: int) -> Monomial:
        """Monomial value of q^(Lambda_k) for 1-based block k."""
        ell = self.cls.ell
        if k <= ell:
            return z_var(k)
        if k == ell + 1:
            if self.mode == "generic":
                return T_VAR
            return Monomial(unit=1, s_exp=-self.cls.P)
        return _ONE

    def q_lambda_eps(self, j: int) -> Monomial:
        return self.block_base(self.cls.block_of(j))

    def q_on_weight(self, v: WeightVec) -> Monomial:
        """q^(lambda, v) for v with integer epsilon coordinates."""
        out = _ONE
        for j, c2 in enumerate(v.coords2, start=1):
            if c2:
                if c2 % 2:
                    raise ValueError("q_on_weight needs integer coordinates")
                out = out * (self.q_lambda_eps(j) ** (c2 // 2))
        return out


def mu_vector(param: ParamAssignment):
    """The eigenvalue parameters mu_1..mu_{l+2} as signed monomials."""
    cls = param.cls
    sizes = cls.block_sizes()
    out = []
    acc = 0
    for k in range(1, cls.ell + 3):
        base = param.block_base(k)
        out.append((base ** 2) * Monomial(s_exp=-4 * acc))
        acc += sizes[k - 1]
    return out


def mu_reflected(param: ParamAssignment, i: int) -> Monomial:
    """mu_i^{-1} q^{-2N + 2(n_i + 1)} for 1-based i <= l+1."""
    cls = param.cls
    mu = mu_vector(param)[i - 1]
    n_i = cls.block_sizes()[i - 1]
    return mu.inverse() * Monomial(s_exp=2 * (-2 * cls.N + 2 * (n_i + 1)))
