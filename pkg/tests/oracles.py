"""Independent word-combinatorial oracles used only by the test suite.

These deliberately avoid the library's geometric machinery: they operate on
words and abelianization vectors alone, so they can cross-check the
geometric verdicts.
"""

from __future__ import annotations

from collections import Counter


def apply_rules(rules, word):
    out = []
    for a in word:
        out.extend(rules[a - 1])
    return tuple(out)


def _abelian(m, word):
    v = [0] * m
    for a in word:
        v[a - 1] += 1
    return tuple(v)


def word_strong_coincidence(m, rules, i, j, l_max=10) -> bool:
    """Letter pair (i, j) has a word-level coincidence: for some L the images
    of i and j under L rule applications share a letter at a position with
    equal prefix abelianizations."""
    u, v = (i,), (j,)
    for _ in range(l_max):
        u, v = apply_rules(rules, u), apply_rules(rules, v)
        pu = [0] * m
        pv = [0] * m
        for p in range(min(len(u), len(v))):
            if u[p] == v[p] and pu == pv:
                return True
            pu[u[p] - 1] += 1
            pv[v[p] - 1] += 1
    return False


def word_strong_coincidence_all(m, rules, l_max=10) -> bool:
    return all(
        word_strong_coincidence(m, rules, i, j, l_max)
        for i in range(1, m + 1)
        for j in range(1, m + 1)
        if i != j
    )


def _fixed_word(m, rules, min_len=200):
    """A long prefix of a one-sided fixed point of some power of the rules."""
    for a in range(1, m + 1):
        w = (a,)
        for _ in range(8):
            w2 = apply_rules(rules, w)
            if w2[: len(w)] == w and len(w2) > len(w):
                while len(w2) < min_len:
                    w2 = apply_rules(rules, w2)
                return w2
            w = w2 if len(w2) < min_len * 4 else w2[: min_len * 4]
    # Fall back to a power of the rules.
    sq = [apply_rules(rules, rules[a - 1]) for a in range(1, m + 1)]
    return _fixed_word(m, sq, min_len)


def _min_balanced_factors(m, x, y):
    """Factor the balanced pair (x, y) into minimal balanced pairs at every
    position where the prefix abelianizations agree."""
    out = []
    px = [0] * m
    py = [0] * m
    start = 0
    for p in range(1, len(x) + 1):
        px[x[p - 1] - 1] += 1
        py[y[p - 1] - 1] += 1
        if px == py:
            out.append((x[start:p], y[start:p]))
            start = p
    return out


def balanced_pair_coincidence(m, rules, cap_pairs=4000, cap_len=10**5) -> bool:
    """Balanced-pair algorithm (reliable for unimodular Pisot substitutions;
    minimal pairs can grow without bound in non-unit cases, which surfaces as
    the length-cap error, never as a wrong verdict).

    Seeds are the swapped adjacent pairs (xy, yx) for factors xy of the fixed
    word with x != y.  The reachable set of minimal balanced pairs is closed
    under (apply rules, refactor); the verdict is true iff the closure is
    finite and every reachable pair can reach a coincidence pair (a, a).
    """
    w = _fixed_word(m, rules)
    seeds = set()
    for x, y in zip(w, w[1:]):
        if x != y:
            seeds.add(((x, y), (y, x)))
    if not seeds:
        return True
    graph: dict[tuple, set[tuple]] = {}
    frontier = list(seeds)
    seen = set(seeds)
    while frontier:
        pair = frontier.pop()
        x, y = pair
        if len(x) > cap_len:
            raise RuntimeError("balanced pair grew past the length cap")
        children = set(_min_balanced_factors(m, apply_rules(rules, x), apply_rules(rules, y)))
        graph[pair] = children
        for ch in children:
            if ch not in seen:
                if len(seen) >= cap_pairs:
                    raise RuntimeError("balanced-pair closure exceeded the cap")
                seen.add(ch)
                frontier.append(ch)
    coincidences = {p for p in seen if len(p[0]) == 1 and p[0] == p[1]}
    # Reverse reachability from coincidence pairs.
    reach = set(coincidences)
    changed = True
    while changed:
        changed = False
        for p, children in graph.items():
            if p not in reach and children & reach:
                reach.add(p)
                changed = True
    return seen <= reach


def abelianization_matrix(m, rules):
    M = [[0] * m for _ in range(m)]
    for j in range(m):
        for a in rules[j]:
            M[a - 1][j] += 1
    return M


def letter_frequencies(m, rules, n=20):
    """Empirical letter counts of a long word, for Perron cross-checks."""
    w = (1,)
    for _ in range(n):
        w = apply_rules(rules, w)
        if len(w) > 10**5:
            break
    return Counter(w)
