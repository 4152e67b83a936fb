"""Word-based graded-commutative algebra, written independently of the package.

Elements are dicts ``{sorted tuple of generator indices: Fraction}``.  Signs
come from bubble-sorting words, one adjacent transposition at a time.
Ranks are taken by sympy over QQ.
"""

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


class WordAlgebra:
    def __init__(self, gens, diff=None, monomial_relations=()):
        # gens: list of (name, degree); diff: name -> {tuple of names: coeff}
        self.names = [g for g, _ in gens]
        self.deg = [d for _, d in gens]
        self.pos = {g: i for i, g in enumerate(self.names)}
        self.relations = [tuple(sorted(self.pos[x] for x in r)) for r in monomial_relations]
        self.dgen = {}
        for g in self.names:
            out = {}
            for word, c in (diff or {}).get(g, {}).items():
                for w, s in self.mul_words([self.pos[x] for x in word]).items():
                    out[w] = out.get(w, 0) + s * Fraction(c)
            self.dgen[self.pos[g]] = {w: c for w, c in out.items() if c}

    def word_degree(self, w):
        return sum(self.deg[i] for i in w)

    def killed(self, w):
        for r in self.relations:
            rest = list(w)
            ok = True
            for x in r:
                if x in rest:
                    rest.remove(x)
                else:
                    ok = False
                    break
            if ok:
                return True
        return False

    def mul_words(self, word):
        """Sort a word by adjacent swaps; returns {sorted word: sign} (empty if zero)."""
        w = list(word)
        sign = 1
        for i in range(len(w)):
            for j in range(len(w) - 1 - i):
                if w[j] > w[j + 1]:
                    if self.deg[w[j]] % 2 and self.deg[w[j + 1]] % 2:
                        sign = -sign
                    w[j], w[j + 1] = w[j + 1], w[j]
        for a, b in zip(w, w[1:]):
            if a == b and self.deg[a] % 2:
                return {}
        t = tuple(w)
        if self.killed(t):
            return {}
        return {t: sign}

    def mul(self, x, y):
        out = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                for w, s in self.mul_words(w1 + w2).items():
                    out[w] = out.get(w, 0) + s * c1 * c2
        return {w: c for w, c in out.items() if c}

    def add(self, x, y, c=1):
        out = dict(x)
        for w, v in y.items():
            out[w] = out.get(w, 0) + c * v
        return {w: v for w, v in out.items() if v}

    def d(self, x):
        out = {}
        for w, c in x.items():
            sign = 1
            for i, g in enumerate(w):
                left = {w[:i]: Fraction(1)}
                right = {w[i + 1:]: Fraction(1)}
                term = self.mul(self.mul(left, self.dgen[g]), right)
                out = self.add(out, term, sign * c)
                if self.deg[g] % 2:
                    sign = -sign
        return out

    def basis(self, k):
        out = []

        def rec(start, rem, word):
            if rem == 0:
                t = tuple(word)
                if not self.killed(t):
                    out.append(t)
                return
            for i in range(start, len(self.names)):
                if self.deg[i] == 0 or self.deg[i] > rem:
                    continue
                rec(i + 1 if self.deg[i] % 2 else i, rem - self.deg[i], word + [i])

        if k == 0:
            return [()]
        rec(0, k, [])
        return sorted(set(out))

    def d_matrix(self, k):
        src, tgt = self.basis(k), self.basis(k + 1)
        idx = {w: i for i, w in enumerate(tgt)}
        rows = [[QQ(0)] * len(src) for _ in tgt]
        for j, w in enumerate(src):
            for ww, c in self.d({w: Fraction(1)}).items():
                rows[idx[ww]][j] += QQ(c.numerator, c.denominator)
        return rows, len(tgt), len(src)

    def cohomology_dims(self, up_to):
        def rank(k):
            if k < 0:
                return 0
            rows, m, n = self.d_matrix(k)
            if m == 0 or n == 0:
                return 0
            return DomainMatrix(rows, (m, n), QQ).rank()

        return {k: len(self.basis(k)) - rank(k) - rank(k - 1) for k in range(up_to + 1)}


def qq_rank(columns, nrows):
    """Rank of sparse integer/rational columns via sympy."""
    if not columns or nrows == 0:
        return 0
    rows = [[QQ(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            v = Fraction(v)
            rows[i][j] = QQ(v.numerator, v.denominator)
    return DomainMatrix(rows, (nrows, len(columns)), QQ).rank()
