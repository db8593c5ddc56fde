"""Find an annular presentation of a two-component link A u B by placing
the axis A through one face of a diagram of B and cutting B along a dual
path to a second face (the point at infinity).

Usage: axis_search.py TARGET KNOT [MAX_BACKTRACK] [SEED]
Prints a tangle file on success.  Offline tooling (snappy / spherogram).
"""
import collections
import random
import sys
import warnings

warnings.filterwarnings("ignore")
import snappy  # noqa: E402,F401
import spherogram as S  # noqa: E402

sys.path.insert(0, __file__.rsplit('/', 1)[0])
from tangle_search import UF, orient, relabel  # noqa: E402


def faces(pd):
    uf = UF()
    slots = collections.defaultdict(list)
    for c, t in enumerate(pd):
        for p, e in enumerate(t):
            slots[e].append((c, p))
    for e, (s, t) in slots.items():
        (c, p), (c2, p2) = s, t
        uf.union((c, p), (c2, (p2 - 1) % 4))
        uf.union((c2, p2), (c, (p - 1) % 4))
    return uf, slots


def candidates(pd):
    uf, slots = faces(pd)
    adj = collections.defaultdict(list)
    for e, (s, t) in slots.items():
        (c, p) = s
        left = uf.find((c, p))
        right = uf.find((c, (p - 1) % 4))
        if left != right:
            adj[right].append((left, e, s, t))
            adj[left].append((right, e, t, s))
    fs = sorted(adj)
    for f0 in fs:
        prev = {f0: None}
        q = collections.deque([f0])
        while q:
            f = q.popleft()
            for g, e, s, t in adj[f]:
                if g not in prev:
                    prev[g] = (f, e, s, t)
                    q.append(g)
        for f1 in fs:
            if f1 == f0:
                continue
            path = []
            f = f1
            while prev[f] is not None:
                pf, e, s, t = prev[f]
                path.append((e, s, t))
                f = pf
            path.reverse()
            yield path


def cut(pd, path):
    """Returns crossings with cut labels, left and right endpoint labels.
    For each step (e, s, t) the fence goes from the right face of s->t to
    its left face, so s lies on the left of the fence."""
    lab = [list(x) for x in pd]
    left, right = [], []
    for i, (e, s, t) in enumerate(path):
        lname, rname = 'L%d' % i, 'R%d' % i
        lab[s[0]][s[1]] = lname
        lab[t[0]][t[1]] = rname
        left.append(lname)
        right.append(rname)
    return lab, left, right


def axis_link(lab, left, right):
    cr = [(list(x), 0) for x in lab]
    w = len(left)
    un = ['a0'] + ['u%d' % i for i in range(1, w)] + ['z']
    ov = ['a0'] + ['o%d' % i for i in range(1, w)] + ['z']
    for i in range(w):
        mid = 'm%d' % i
        cr.append(([un[i], mid, un[i + 1], left[i]], 0))
        cr.append(([ov[i], right[i], ov[i + 1], mid], 1))
    return cr


def closure(lab, left, right):
    uf = UF()
    for a, b in zip(left, right):
        uf.union(a, b)
    return [([x for x in t], 0) for t in lab], uf


def main():
    target, knot = sys.argv[1], sys.argv[2]
    max_bt = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    rng = random.Random(int(sys.argv[4]) if len(sys.argv) > 4 else 1)
    seen = set()
    for attempt in range(100000):
        K = S.Link(knot)
        if max_bt:
            K.backtrack(rng.randrange(1, max_bt + 1))
            K.simplify('level') if rng.random() < 0.3 else None
        pd = [tuple(x) for x in K.PD_code()]
        for path in candidates(pd):
            lab, left, right = cut(pd, path)
            key = (tuple(map(tuple, lab)), tuple(left))
            if key in seen:
                continue
            seen.add(key)
            res = orient(axis_link(lab, left, right), UF())
            if res is None:
                continue
            pdl, comps = res
            if len(comps) != 2:
                continue
            L = S.Link(relabel(pdl))
            if L.linking_matrix()[0][1] != 0:
                continue
            try:
                ids = [m.name() for m in L.exterior().identify()]
            except Exception:
                continue
            if any(n.startswith(target + '(') or n == target for n in ids):
                print('# attempt', attempt, 'crossings', len(pd), 'w', len(left))
                print('left', ' '.join(left))
                print('right', ' '.join(right))
                for t in lab:
                    print('X', ' '.join(str(x) for x in t))
                return
    print('not found')


if __name__ == '__main__':
    main()
