"""Weight-truncated parabolic Verma module engine.

Vectors are finite combinations of Chevalley words (i_1, ..., i_d),
meaning f_{i_1} ... f_{i_d} applied to the highest vector, rightmost
letter first.  A weight space is the full word space at a fixed offset
beta modulo the relation space spanned by

  (a) every two-sided insertion u * serre * w of a quantum Serre
      relation (base s at the short B root), and
  (b) every word whose rightmost letter lies in the Levi part,

which is a complete presentation of the module as a module over the
negative half.  Equality is decided by reduction against the row-reduced
relation space, never through the Shapovalov pairing, so it stays sound
at the specialized weights where the pairing degenerates.  Quotient mode
additionally reduces by the expanded submodule of a designated singular
vector.

Offsets are handled as root-coordinate tuples throughout.
"""

from __future__ import annotations

import os
from functools import lru_cache

from qclass.coeff import (
    FracScalar,
    LaurentPoly,
    Monomial,
    gauss_bracket,
    qbinom,
)
from qclass.rootdata import (
    ClassData,
    ParamAssignment,
    kostant_dim,
    levi_simple_indices,
    simple_roots,
)
from qclass.rowreduce import RowSpace, SparseVec, kernel_basis, poly_rank

DEFAULT_WORD_CAP = 12


class ResourceCapError(RuntimeError):
    """A weight-space enumeration exceeded the configured cap."""


def word_cap_from_env(default: int = DEFAULT_WORD_CAP) -> int:
    v = os.environ.get("QCLASS_CAP_WORDLEN")
    return int(v) if v else default


@lru_cache(maxsize=None)
def _gram2(rank):
    """2 (alpha_i, alpha_j) as an integer matrix."""
    al = simple_roots(rank)
    return tuple(tuple(int(2 * a.ip(b)) for b in al) for a in al)


@lru_cache(maxsize=None)
def _serre_relations(rank):
    """Defining relations of the negative half, as weighted word chunks.

    Returns a tuple of (gamma, ((word, coeff_poly), ...)) with gamma the
    root-coordinate weight of the relation.
    """
    n = rank.n
    al = simple_roots(rank)
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            aij = int(2 * al[i - 1].ip(al[j - 1]) / al[i - 1].ip(al[i - 1]))
            if aij == 0:
                if i < j:
                    gamma = [0] * n
                    gamma[i - 1] += 1
                    gamma[j - 1] += 1
                    out.append(
                        (
                            tuple(gamma),
                            (
                                ((i, j), LaurentPoly.one()),
                                ((j, i), -LaurentPoly.one()),
                            ),
                        )
                    )
                continue
            deg = 1 - aij
            base = Monomial(s_exp=int(al[i - 1].ip(al[i - 1])))
            gamma = [0] * n
            gamma[i - 1] = deg
            gamma[j - 1] = 1
            chunks = []
            for k in range(deg + 1):
                coeff = qbinom(deg, k, base)
                if k % 2:
                    coeff = -coeff
                word = (i,) * (deg - k) + (j,) + (i,) * k
                chunks.append((word, coeff))
            out.append((tuple(gamma), tuple(chunks)))
    return tuple(out)


def _decompositions(beta):
    """All componentwise splits beta = bu + bw, in a deterministic order."""
    if not beta:
        yield (), ()
        return
    head = beta[0]
    for rest_u, rest_w in _decompositions(beta[1:]):
        for k in range(head + 1):
            yield (k,) + rest_u, (head - k,) + rest_w


class WeightSpace:
    """Row-reduced data of one weight component."""

    __slots__ = ("beta", "words", "rel", "extra", "dim", "quotient_dim")

    def __init__(self, beta, words, rel, extra=None):
        self.beta = beta
        self.words = words
        self.rel = rel
        self.extra = extra
        self.dim = len(words) - rel.rank
        self.quotient_dim = self.dim - (extra.rank if extra else 0)

    def basis_words(self):
        """Non-pivot words: normal-form representatives of the space."""
        return [w for w in self.words if w not in self.rel.rows]


class VermaEngine:
    """All word-level computations for one (class, parametrization)."""

    def __init__(self, cls: ClassData, param: ParamAssignment, word_cap=None):
        self.cls = cls
        self.param = param
        self.rank = cls.rank
        self.n = cls.n
        self.word_cap = word_cap if word_cap is not None else word_cap_from_env()
        self.levi = levi_simple_indices(cls)
        self.gram2 = _gram2(self.rank)
        self._lambda_mon = [param.q_on_weight(a) for a in simple_roots(self.rank)]
        self._spaces = {}
        self._quotient_spaces = {}
        self._words = {}
        self._bracket_cache = {}
        self._quotient_gen = None  # (vector, beta) of the singular generator

    # -- word enumeration ---------------------------------------------
    def words(self, beta):
        beta = tuple(beta)
        got = self._words.get(beta)
        if got is not None:
            return got
        height = sum(beta)
        if height > self.word_cap:
            raise ResourceCapError(
                f"word height {height} exceeds cap {self.word_cap} at beta={beta}"
            )
        letters = []
        for i, c in enumerate(beta, start=1):
            letters.extend([i] * c)
        out = []

        def rec(prefix, remaining):
            if not remaining:
                out.append(tuple(prefix))
                return
            last = None
            for idx in range(len(remaining)):
                v = remaining[idx]
                if v == last:
                    continue
                last = v
                rec(prefix + [v], remaining[:idx] + remaining[idx + 1 :])

        rec([], letters)
        out = tuple(out)
        self._words[beta] = out
        return out

    # -- Cartan values --------------------------------------------------
    def cartan_monomial(self, i, beta) -> Monomial:
        """q^{(alpha_i, lambda - beta)} as an invertible monomial."""
        g = self.gram2[i - 1]
        s_shift = -sum(c * g[j] for j, c in enumerate(beta))
        return self._lambda_mon[i - 1] * Monomial(s_exp=s_shift)

    def bracket(self, i, beta) -> FracScalar:
        """[(alpha_i, lambda - beta)]_q with the root-independent denominator."""
        m = self.cartan_monomial(i, tuple(beta))
        key = m.key()
        got = self._bracket_cache.get(key)
        if got is None:
            got = gauss_bracket(m)
            self._bracket_cache[key] = got
        return got

    # -- raw actions ----------------------------------------------------
    def apply_f(self, i, vec: SparseVec) -> SparseVec:
        out = SparseVec()
        for word, c in vec.items():
            out[(i,) + word] = c
        return out

    def apply_e(self, i, vec: SparseVec) -> SparseVec:
        """Rewrite e_i through each word; exact in the module.

        e_i f_{j_1} ... f_{j_d} v = sum over positions t with j_t = i of
        [(alpha_i, lambda - beta_{>t})]_q times the word with letter t
        removed, beta_{>t} being the offset of the letters right of t.
        """
        out = SparseVec()
        n = self.n
        for word, c in vec.items():
            suffix = [0] * n
            for t in range(len(word) - 1, -1, -1):
                if word[t] == i:
                    b = self.bracket(i, tuple(suffix))
                    if not b.is_zero():
                        nw = word[:t] + word[t + 1 :]
                        cur = out.get(nw)
                        nv = c * b if cur is None else cur + c * b
                        if nv.is_zero():
                            out.pop(nw, None)
                        else:
                            out[nw] = nv
                suffix[word[t] - 1] += 1
        return out

    def apply_word_f(self, word, vec: SparseVec) -> SparseVec:
        for letter in reversed(word):
            vec = self.apply_f(letter, vec)
        return vec

    def beta_of(self, vec: SparseVec):
        """Root-coordinate offset of a homogeneous vector (None if empty)."""
        betas = set()
        for word in vec:
            b = [0] * self.n
            for letter in word:
                b[letter - 1] += 1
            betas.add(tuple(b))
        if not betas:
            return None
        if len(betas) > 1:
            raise ValueError(f"inhomogeneous vector: offsets {sorted(betas)}")
        return betas.pop()

    # -- weight spaces ----------------------------------------------------
    def space(self, beta) -> WeightSpace:
        beta = tuple(beta)
        got = self._spaces.get(beta)
        if got is not None:
            return got
        words = self.words(beta)
        rel = RowSpace()
        one = FracScalar.one()
        wordset = set(words)
        for w in words:
            if w and w[-1] in self.levi:
                rel.insert(SparseVec({w: one}))
        for gamma, chunks in _serre_relations(self.rank):
            rest = tuple(b - g for b, g in zip(beta, gamma))
            if any(v < 0 for v in rest):
                continue
            for bu, bw in _decompositions(rest):
                for u in self.words(bu):
                    for w in self.words(bw):
                        row = SparseVec()
                        for chunk, coeff in chunks:
                            key = u + chunk + w
                            assert key in wordset
                            row.iadd_scaled(FracScalar.from_poly(coeff), {key: one})
                        rel.insert(row)
        ws = WeightSpace(beta, words, rel)
        expected = kostant_dim(self.cls, beta)
        if ws.dim != expected:
            raise ArithmeticError(
                f"weight space dim {ws.dim} != partition count {expected} at {beta}"
            )
        self._spaces[beta] = ws
        return ws

    def set_quotient_generator(self, vec: SparseVec, beta):
        self._quotient_gen = (vec, tuple(beta))
        self._quotient_spaces.clear()

    def quotient_space(self, beta) -> WeightSpace:
        beta = tuple(beta)
        got = self._quotient_spaces.get(beta)
        if got is not None:
            return got
        if self._quotient_gen is None:
            raise RuntimeError("quotient mode needs a singular generator")
        gen, gb = self._quotient_gen
        hat = self.space(beta)
        extra = RowSpace()
        diff = tuple(b - g for b, g in zip(beta, gb))
        if all(v >= 0 for v in diff):
            for u in self.words(diff):
                vec = self.normal_form(self.apply_word_f(u, gen), beta)
                extra.insert(vec)
        ws = WeightSpace(beta, hat.words, hat.rel, extra)
        self._quotient_spaces[beta] = ws
        return ws

    # -- normal forms ----------------------------------------------------
    def normal_form(self, vec: SparseVec, beta=None, quotient=False) -> SparseVec:
        if not vec:
            return SparseVec()
        if beta is None:
            beta = self.beta_of(vec)
        ws = self.quotient_space(beta) if quotient else self.space(beta)
        out = ws.rel.reduce(vec)
        if quotient and ws.extra is not None and out:
            out = ws.extra.reduce(out)
        return out

    def is_zero(self, vec: SparseVec, quotient=False) -> bool:
        return not self.normal_form(vec, quotient=quotient)

    # -- pairings and kernels ---------------------------------------------
    def shapovalov(self, x, y) -> FracScalar:
        """Contravariant pairing <x*, y> normalized to 1 on the top vector."""
        if isinstance(x, tuple):
            x = SparseVec({x: FracScalar.one()})
        if isinstance(y, tuple):
            y = SparseVec({y: FracScalar.one()})
        bx, by = self.beta_of(x), self.beta_of(y)
        if bx != by:
            raise ValueError(f"weight mismatch in pairing: {bx} vs {by}")
        total = FracScalar.zero()
        for word, cx in x.items():
            v = y
            for letter in word:
                v = self.apply_e(letter, v)
                if not v:
                    break
            c = v.get(())
            if c is not None:
                total = total + cx * c
        return total

    def singular_space(self, beta, quotient=False, exclude=()):
        """Basis of the joint kernel of all raising operators at offset beta.

        Vectors are returned in normal form; exclude lists simple-root
        indices whose raising operator is not imposed.
        """
        beta = tuple(beta)
        ws = self.quotient_space(beta) if quotient else self.space(beta)
        basis = ws.basis_words()
        if quotient and ws.extra is not None:
            basis = [w for w in basis if w not in ws.extra.rows]
        cols = list(range(len(basis)))
        one = FracScalar.one()
        equations = {}
        for j, bw in enumerate(basis):
            img_src = SparseVec({bw: one})
            for i in range(1, self.n + 1):
                if i in exclude:
                    continue
                tb = list(beta)
                tb[i - 1] -= 1
                if tb[i - 1] < 0:
                    continue
                img = self.normal_form(
                    self.apply_e(i, img_src), tuple(tb), quotient=quotient
                )
                for tw, c in img.items():
                    equations.setdefault((i, tw), SparseVec())[j] = c
        # fraction-free rank first: certifies a trivial kernel cheaply,
        # which is the expensive direction in generic mode
        if poly_rank(equations.values(), cols) == len(cols):
            return []
        kb = kernel_basis(equations.values(), cols)
        out = []
        for k in kb:
            vec = SparseVec()
            for j, c in k.items():
                vec[basis[j]] = c
            out.append(vec)
        return out

    def submodule_rows(self, gen: SparseVec, gen_beta, beta, quotient=False) -> RowSpace:
        """Row-reduced weight-beta component of the span of words times gen."""
        gen_beta = tuple(gen_beta)
        beta = tuple(beta)
        rows = RowSpace()
        diff = tuple(b - g for b, g in zip(beta, gen_beta))
        if any(v < 0 for v in diff):
            return rows
        for u in self.words(diff):
            vec = self.normal_form(self.apply_word_f(u, gen), beta, quotient=quotient)
            rows.insert(vec)
        return rows
