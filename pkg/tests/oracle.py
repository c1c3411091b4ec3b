"""Independent straightening oracle used by the tests.

Elements are dicts mapping free words (tuples of generator indices) to
coefficients.  Rewriting moves the leftmost out-of-order adjacent pair with
the commutation rule and collapses p adjacent equal letters through the
power map, until every word is sorted with runs below p.  This shares no
code or representation with rla.env's memoized exponent-vector kernel.
"""

from __future__ import annotations


def _clean(d, p):
    return {w: c % p for w, c in d.items() if c % p}


def rewrite(spec, d):
    """Free-word element -> PBW normal form as {exponent tuple: coeff}."""
    p, n = spec.p, spec.n
    work = _clean(dict(d), p)
    done = {}
    while work:
        word, coeff = min(work.items())
        del work[word]
        pos = None
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                pos = t
                break
        if pos is not None:
            i, j = word[pos], word[pos + 1]
            swapped = word[:pos] + (j, i) + word[pos + 2:]
            work[swapped] = work.get(swapped, 0) + coeff
            for l, cl in enumerate(spec.bracket[i, j]):
                if cl:
                    short = word[:pos] + (l,) + word[pos + 2:]
                    work[short] = work.get(short, 0) + coeff * int(cl)
            work = _clean(work, p)
            continue
        run = None
        for t in range(len(word) - p + 1):
            if len(set(word[t:t + p])) == 1:
                run = t
                break
        if run is not None:
            g = word[run]
            for l, ql in enumerate(spec.pmap[g]):
                if ql:
                    short = word[:run] + (l,) + word[run + p:]
                    work[short] = work.get(short, 0) + coeff * int(ql)
            work = _clean(work, p)
            continue
        exps = [0] * n
        for g in word:
            exps[g] += 1
        key = tuple(exps)
        done[key] = (done.get(key, 0) + coeff) % p
    return {k: v for k, v in done.items() if v}


def word_of(exps):
    out = []
    for g, e in enumerate(exps):
        out.extend([g] * e)
    return tuple(out)


def to_words(env, elem):
    """EnvElement -> free-word dict."""
    return {word_of(env.decode(m)): c for m, c in elem.items}


def mul(spec, env, a, b):
    """Product of two EnvElements computed purely by word rewriting,
    returned as {exponent tuple: coeff}."""
    wa, wb = to_words(env, a), to_words(env, b)
    prod = {}
    for u, cu in wa.items():
        for v, cv in wb.items():
            prod[u + v] = prod.get(u + v, 0) + cu * cv
    return rewrite(spec, prod)


def antipode(spec, env, a):
    """Reverse each word and attach (-1)^length, then normalize."""
    out = {}
    for w, c in to_words(env, a).items():
        rw = tuple(reversed(w))
        out[rw] = out.get(rw, 0) + c * (-1) ** len(w)
    return rewrite(spec, out)


def as_exp_dict(env, elem):
    return {env.decode(m): c for m, c in elem.items}
