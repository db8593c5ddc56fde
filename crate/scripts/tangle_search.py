"""Random search for an annular presentation (axis A, knot B) of a target
two-component link.  Superseded by axis_search.py, which reuses its helpers.

Requires snappy / spherogram (offline tooling only).
"""
import random
import sys
import warnings

warnings.filterwarnings("ignore")
import snappy  # noqa: E402,F401
import spherogram as S  # noqa: E402


class UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def build(ops, w):
    """ops: list of ('X', i, over) | ('cup', i) | ('cap', i).
    Returns (crossings, left, right, uf) with crossings as
    (labels[4] ccw from SW, under_parity) and left/right label lists."""
    nxt = [0]

    def new():
        nxt[0] += 1
        return nxt[0]

    uf = UF()
    pos = [new() for _ in range(w)]
    left = list(pos)
    crossings = []
    for op in ops:
        if op[0] == 'X':
            _, i, over = op
            sw, nw = pos[i], pos[i + 1]
            se, ne = new(), new()
            # strands SW-NE and NW-SE; over=0 -> SW-NE over
            under_parity = 1 if over == 0 else 0  # parity of under pair start index
            crossings.append(([sw, se, ne, nw], under_parity))
            pos[i], pos[i + 1] = se, ne
        elif op[0] == 'cup':
            _, i = op
            a, b = new(), new()
            uf.union(a, b)
            pos[i:i] = [a, b]
        elif op[0] == 'cap':
            _, i = op
            uf.union(pos[i], pos[i + 1])
            del pos[i:i + 2]
    right = list(pos)
    return crossings, left, right, uf


def random_ops(w, length, rng):
    ops = []
    n = w
    for step in range(length):
        choices = []
        if n >= 2:
            choices += ['X'] * 6
            choices += ['cap'] * 1
        if n < 6:
            choices += ['cup'] * 1
        c = rng.choice(choices)
        if c == 'X':
            ops.append(('X', rng.randrange(n - 1), rng.randrange(2)))
        elif c == 'cup':
            ops.append(('cup', rng.randrange(n + 1)))
            n += 2
        else:
            ops.append(('cap', rng.randrange(n - 1)))
            n -= 2
    while n > w:
        ops.append(('cap', rng.randrange(n - 1)))
        n -= 2
    while n < w:
        ops.append(('cup', rng.randrange(n + 1)))
        n += 2
    return ops


def orient(crossings, uf, extra_glue=()):
    """Return oriented PD tuples (incoming under first) or None; also
    component structure."""
    for a, b in extra_glue:
        uf.union(a, b)
    lab = lambda e: uf.find(e)
    slots = {}
    cr = []
    for ci, (labels, up) in enumerate(crossings):
        ls = [lab(e) for e in labels]
        cr.append((ls, up))
        for p, e in enumerate(ls):
            slots.setdefault(e, []).append((ci, p))
    for e, s in slots.items():
        if len(s) != 2:
            return None
    # traverse strands: direction of each edge = (from slot, to slot)
    head = {}
    visited_edges = set()
    comps = []
    for e0 in slots:
        if e0 in visited_edges:
            continue
        # start: edge e0 going into slot slots[e0][0]
        comp = []
        e, into = e0, slots[e0][0]
        while e not in visited_edges:
            visited_edges.add(e)
            comp.append(e)
            head[e] = into
            ci, p = into
            q = (p + 2) % 4
            e2 = cr[ci][0][q]
            s2 = slots[e2]
            out = (ci, q)
            into2 = s2[1] if s2[0] == out else s2[0]
            if s2[0] == s2[1]:
                into2 = out
            e, into = e2, into2
        comps.append(comp)
    pd = []
    for ci, (ls, up) in enumerate(cr):
        # incoming under slot: the under pair positions up, up+2
        a = up
        c = (up + 2) % 4
        if head[ls[a]] == (ci, a):
            start = a
        else:
            start = c
        pd.append(tuple(ls[(start + k) % 4] for k in range(4)))
    return pd, comps


def relabel(pd):
    m = {}
    out = []
    for t in pd:
        out.append(tuple(m.setdefault(e, len(m)) for e in t))
    return out


def closure_and_axis(ops, w):
    crossings, left, right, uf = build(ops, w)
    # closure
    glue = list(zip(right, left))
    import copy
    uf1 = copy.deepcopy(uf)
    res = orient(crossings, uf1, glue)
    if res is None:
        return None
    pdB, compsB = res
    if len(compsB) != 1 and len(crossings) > 0:
        return None
    # axis link: right end: A vertical segment over all strands, then fence, then A under
    uf2 = copy.deepcopy(uf)
    cr2 = list(crossings)
    nxt = [10 ** 6]

    def new():
        nxt[0] += 1
        return nxt[0]

    # column at right end (A over): strands W=right[h], E=new; A goes S->N
    a_low_r = new()
    cur = a_low_r
    r_out = []
    for h in range(w):
        e_out = new()
        a_up = new()
        cr2.append(([right[h], cur, e_out, a_up], 0))  # under pair W,E -> A over
        r_out.append(e_out)
        cur = a_up
    a_top_r = cur
    # column at left end (A under)
    a_low_l = new()
    cur = a_low_l
    l_in = []
    for h in range(w):
        e_in = new()
        a_up = new()
        cr2.append(([e_in, cur, left[h], a_up], 1))  # under pair S,N -> A under
        l_in.append(e_in)
        cur = a_up
    a_top_l = cur
    glue2 = list(zip(r_out, l_in)) + [(a_top_r, a_top_l), (a_low_r, a_low_l)]
    res2 = orient(cr2, uf2, glue2)
    if res2 is None:
        return None
    pdL, compsL = res2
    return relabel(pdB), relabel(pdL), (crossings, left, right, uf)


def main():
    target = sys.argv[1] if len(sys.argv) > 1 else 'L10a7'
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    rng = random.Random(seed)
    w = 2
    tries = 0
    while True:
        tries += 1
        length = rng.randrange(4, 12)
        ops = random_ops(w, length, rng)
        ncross = sum(1 for o in ops if o[0] == 'X')
        if ncross < 4 or ncross > 9:
            continue
        r = closure_and_axis(ops, w)
        if r is None:
            continue
        pdB, pdL, raw = r
        try:
            L = S.Link(pdL)
        except Exception:
            continue
        if len(L.link_components) != 2:
            continue
        lk = L.linking_matrix()[0][1]
        if lk != 0:
            continue
        try:
            idsL = [m.name() for m in L.exterior().identify()]
        except Exception:
            continue
        if any(n.startswith(target + '(') or n == target for n in idsL):
            print("FOUND", tries, ops, flush=True)
            print("B", pdB, [m.name() for m in S.Link(pdB).exterior().identify()], flush=True)
            return


if __name__ == '__main__':
    main()
