"""A second assembly of the normalized Hochschild complex.

A word is a sequence of graded symbols ``a0 s a1 s a2 ... s ap`` where the
suspension ``s`` has degree -1.  Every sign is obtained generically: the
internal differential is a derivation through the symbol string, the bar
contractions remove one ``s`` with the Koszul sign of the symbols to its
left, and the wrap-around term is the cyclic rotation of ``s ap`` to the
front (Koszul sign of a block swap) followed by a right-twisted contraction,
which carries an extra minus sign.
"""

from fractions import Fraction
from itertools import product

from .cdga_oracle import WordAlgebra, qq_rank

S = "s"


def _deg(alg, sym):
    return -1 if sym == S else alg.word_degree(sym)


def _prefix_degree(alg, syms):
    return sum(_deg(alg, x) for x in syms)


def _to_key(syms):
    return tuple(x for x in syms if x != S)


def _from_key(key):
    out = [key[0]]
    for a in key[1:]:
        out += [S, a]
    return out


def _add(acc, k, c):
    v = acc.get(k, 0) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


def internal(alg, key):
    syms = _from_key(key)
    out = {}
    for i, x in enumerate(syms):
        if x == S:
            continue
        sign = (-1) ** (_prefix_degree(alg, syms[:i]) % 2)
        for w, c in alg.d({x: Fraction(1)}).items():
            if i > 0 and len(w) == 0:
                continue
            _add(out, _to_key(syms[:i] + [w] + syms[i + 1:]), sign * c)
    return out


def bar(alg, key):
    syms = _from_key(key)
    out = {}
    for i, x in enumerate(syms):
        if x != S:
            continue
        sign = (-1) ** (_prefix_degree(alg, syms[:i]) % 2)
        prod = alg.mul({syms[i - 1]: Fraction(1)}, {syms[i + 1]: Fraction(1)})
        for w, c in prod.items():
            _add(out, _to_key(syms[:i - 1] + [w] + syms[i + 2:]), sign * c)
    if len(key) > 1:
        block = syms[-2:]
        rest = syms[:-2]
        rot = (_prefix_degree(alg, block) * _prefix_degree(alg, rest)) % 2
        sign = -((-1) ** rot)
        # contract "s ap a0" -> ap a0, the s standing first
        prod = alg.mul({block[1]: Fraction(1)}, {rest[0]: Fraction(1)})
        for w, c in prod.items():
            _add(out, _to_key([w] + rest[1:]), sign * c)
    return out


def words(alg, k, max_length):
    """Normalized words of cohomological degree k with at most max_length bar factors."""
    out = []
    for p in range(max_length + 1):
        internal_total = k + p
        for e0 in range(0, internal_total + 1):
            b0 = alg.basis(e0)
            if not b0:
                continue
            for es in _compositions(internal_total - e0, p):
                pools = [alg.basis(e) for e in es]
                for combo in product(b0, *pools):
                    out.append(tuple(combo))
    return sorted(out)


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for e in range(1, total - parts + 2):
        for rest in _compositions(total - e, parts - 1):
            yield (e,) + rest


def total_columns(alg, k, max_length, which="total"):
    src = words(alg, k, max_length)
    tgt = {w: i for i, w in enumerate(words(alg, k + 1, max_length))}
    cols = []
    for w in src:
        v = {}
        if which in ("total", "internal"):
            for ww, c in internal(alg, w).items():
                _add(v, ww, c)
        if which in ("total", "bar"):
            for ww, c in bar(alg, w).items():
                _add(v, ww, c)
        cols.append({tgt[ww]: c for ww, c in v.items()})
    return cols, len(tgt), src


def homology_dims(alg, max_degree, max_length):
    ranks = {}

    def rank(k):
        if k < 0:
            return 0
        if k not in ranks:
            cols, m, _ = total_columns(alg, k, max_length)
            ranks[k] = qq_rank(cols, m)
        return ranks[k]

    return {k: len(words(alg, k, max_length)) - rank(k) - rank(k - 1) for k in range(max_degree + 1)}


def compose(alg, key, first, second, max_length):
    out = {}
    for w, c in first(alg, key).items():
        for ww, cc in second(alg, w).items():
            _add(out, ww, c * cc)
    return out


def loop_space_model(gens, diff):
    """Sullivan model of the free loop space: generators v and sv, d(sv) = -s(dv).

    ``gens`` lists ``(name, degree)`` of a minimal model and ``diff`` maps a
    name to ``{tuple of names: coefficient}``; ``s`` is the degree -1
    derivation with ``s(v) = sv``.
    """
    bar_names = {g: g + "_s" for g, _ in gens}
    all_gens = list(gens) + [(bar_names[g], d - 1) for g, d in gens]
    new_diff = {g: dict(v) for g, v in diff.items()}
    for g, _ in gens:
        out = {}
        for word, c in diff.get(g, {}).items():
            for i, x in enumerate(word):
                sign = (-1) ** (sum(dict(gens)[y] for y in word[:i]) % 2)
                w = tuple(word[:i]) + (bar_names[x],) + tuple(word[i + 1:])
                out[w] = out.get(w, 0) - sign * c
        new_diff[bar_names[g]] = out
    return WordAlgebra(all_gens, new_diff)
