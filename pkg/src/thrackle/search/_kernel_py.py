"""Face-walk routing kernel, pure Python.

The working map lives in flat lists indexed by dart (``org``, ``nxt``,
``prv``, ``sedge``) and by node (``vid``: graph vertex id or -1).  Forward
darts are even.  A routed arc grows one crossing at a time: crossing the
boundary dart ``e`` of the current face splits e's segment at a new node X,
draws the arc segment from the current tip to X and moves the tip to the
far side of e.  Every step is undone in reverse on backtrack.

Arc plans are tuples ``(edge, start, end, must)`` where

* ``start`` is ``("corners", [(dart, label), ...])`` (leave an existing node
  right after ``dart`` in its rotation), ``("faces", [(dart, label), ...])``
  (a new vertex inside the face left of ``dart``) or ``("prev",)`` (the new
  vertex that ended the previous arc);
* ``end`` is ``("free",)`` (a new vertex in the final face) or
  ``("vertex", node, labels)`` (an existing node; ``labels`` are the face
  labels of its corners, used by parity pruning);
* ``must`` lists the edges the arc crosses, each exactly once.

Labels are winding numbers with respect to the reference cycle whose
orientation per edge is given by ``cyc`` (0 for edges off the cycle).
"""
from __future__ import annotations


class Aborted(Exception):
    pass


class Router:
    def __init__(self, org, nxt, sedge, vid, n_edges, cyc, n_vertices, plans,
                 prune_dead=True, prune_parity=True, budget=None):
        extra_darts = 0
        extra_nodes = 0
        extra_edges = len(plans)
        for plan in plans:
            extra_darts += 4 * len(plan[3]) + 2
            extra_nodes += len(plan[3]) + 2
        nd = len(org)
        self.org = list(org) + [-1] * extra_darts
        self.nxt = list(nxt) + [-1] * extra_darts
        self.prv = [0] * (nd + extra_darts)
        for d in range(nd):
            self.prv[self.nxt[d]] = d
        self.sedge = list(sedge) + [-1] * extra_darts
        self.vid = list(vid) + [-1] * extra_nodes
        n_edges = n_edges + extra_edges
        self.cyc = list(cyc) + [0] * (n_edges - len(cyc))
        self.rem = [0] * n_edges
        self.emark = [0] * n_edges
        self.dmark = [0] * (nd + extra_darts)
        self.stamp = 0
        self.nd = nd
        self.nn = len(vid)
        self.nv = n_vertices
        self.plans = plans
        self.prune_dead = prune_dead
        self.prune_parity = prune_parity
        self.budget = budget
        self.nodes = 0
        self.aborted = False
        self.choices = []
        self.prefix = ()
        self.count_from = 0
        self.collect_depth = -1
        self.collected = []
        self.on_complete = None

    # -- primitive edits -------------------------------------------------

    def _insert_after(self, c, a):
        n = self.nxt[c]
        self.nxt[c] = a
        self.prv[a] = c
        self.nxt[a] = n
        self.prv[n] = a

    def _unlink(self, a):
        p = self.prv[a]
        n = self.nxt[a]
        self.nxt[p] = n
        self.prv[n] = p

    def _attach(self, c, a):
        if c < 0:
            self.nxt[a] = a
            self.prv[a] = a
        else:
            self._insert_after(c, a)

    # -- queries -----------------------------------------------------------

    def _orbit(self, d0):
        out = [d0]
        prv = self.prv
        d = prv[d0 ^ 1]
        while d != d0:
            out.append(d)
            d = prv[d ^ 1]
        return out

    def _dead(self, fd, rc, w):
        """True if some remaining edge or the fixed end is unreachable."""
        self.stamp += 1
        st = self.stamp
        dmark, emark, rem, sedge, org, prv = self.dmark, self.emark, self.rem, self.sedge, self.org, self.prv
        seen = 0
        found_w = w < 0
        stack = [fd]
        while stack:
            d0 = stack.pop()
            if dmark[d0] == st:
                continue
            d = d0
            while True:
                dmark[d] = st
                e = sedge[d]
                if rem[e]:
                    if emark[e] != st:
                        emark[e] = st
                        seen += 1
                    if dmark[d ^ 1] != st:
                        stack.append(d ^ 1)
                if not found_w and org[d] == w:
                    found_w = True
                d = prv[d ^ 1]
                if d == d0:
                    break
        return seen < rc or not found_w

    # -- search ------------------------------------------------------------

    def _visit(self, depth):
        """Count a search node; returns False when the subtree must be skipped."""
        if depth == self.collect_depth:
            self.collected.append(tuple(self.choices))
            return False
        if depth >= self.count_from:
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                self.aborted = True
                raise Aborted
        return True

    def _take(self, depth, i):
        if depth < len(self.prefix):
            return self.prefix[depth] == i
        return True

    def run(self, on_complete, prefix=(), collect_depth=-1):
        self.on_complete = on_complete
        self.prefix = tuple(prefix)
        self.count_from = len(self.prefix)
        self.collect_depth = collect_depth
        self.collected = []
        try:
            self._start_arc(0, -1, -1, 0, 0)
        except Aborted:
            pass
        return self.nodes, self.aborted

    def _start_arc(self, k, P, c, lam, depth):
        if k == len(self.plans):
            if not self._visit(depth):
                return
            self.on_complete(self)
            return
        edge, start, end, must = self.plans[k]
        for e in must:
            self.rem[e] = 1
        rc = len(must)
        rcyc = sum(1 for e in must if self.cyc[e])
        try:
            if start[0] == "prev":
                self._arc(k, P, c, c, lam, rc, rcyc, depth)
            elif start[0] == "corners":
                if not self._visit(depth):
                    return
                for i, (c0, lab) in enumerate(start[1]):
                    if not self._take(depth, i):
                        continue
                    self.choices.append(i)
                    self._arc(k, self.org[c0], c0, c0, lab, rc, rcyc, depth + 1)
                    self.choices.pop()
            else:
                if not self._visit(depth):
                    return
                for i, (f0, lab) in enumerate(start[1]):
                    if not self._take(depth, i):
                        continue
                    P = self.nn
                    self.nn += 1
                    self.vid[P] = self.nv
                    self.nv += 1
                    self.choices.append(i)
                    self._arc(k, P, -1, f0, lab, rc, rcyc, depth + 1)
                    self.choices.pop()
                    self.nv -= 1
                    self.vid[P] = -1
                    self.nn -= 1
        finally:
            for e in must:
                self.rem[e] = 0

    def _arc(self, k, P, c, fd, lam, rc, rcyc, depth):
        if not self._visit(depth):
            return
        edge, start, end, must = self.plans[k]
        w = end[1] if end[0] == "vertex" else -1
        if self.prune_parity and w >= 0 and end[2]:
            ok = False
            for mu in end[2]:
                gap = lam - mu if lam >= mu else mu - lam
                if gap <= rcyc and (rcyc - gap) % 2 == 0:
                    ok = True
                    break
            if not ok:
                return
        if self.prune_dead and (rc > 0 or w >= 0) and self._dead(fd, rc, w):
            return
        orbit = self._orbit(fd)
        org, nxt, prv, sedge = self.org, self.nxt, self.prv, self.sedge
        if rc == 0:
            if w < 0:
                options = [-1]
            else:
                options = [x for x in orbit if org[x] == w]
            for i, x in enumerate(options):
                if not self._take(depth, i):
                    continue
                self.choices.append(i)
                A = self.nd
                self.nd += 2
                if x < 0:
                    Q = self.nn
                    self.nn += 1
                    self.vid[Q] = self.nv
                    self.nv += 1
                else:
                    Q = w
                org[A] = P
                org[A + 1] = Q
                sedge[A] = sedge[A + 1] = edge
                self._attach(c, A)
                if x < 0:
                    nxt[A + 1] = A + 1
                    prv[A + 1] = A + 1
                else:
                    self._insert_after(x, A + 1)
                self._start_arc(k + 1, Q, A + 1, lam, depth + 1)
                if x >= 0:
                    self._unlink(A + 1)
                if c >= 0:
                    self._unlink(A)
                if x < 0:
                    self.nv -= 1
                    self.vid[Q] = -1
                    self.nn -= 1
                self.nd -= 2
                self.choices.pop()
            return
        options = [e for e in orbit if self.rem[sedge[e]]]
        cyc, rem = self.cyc, self.rem
        for i, e in enumerate(options):
            if not self._take(depth, i):
                continue
            self.choices.append(i)
            F = e & ~1
            B = F | 1
            q = org[B]
            X = self.nn
            self.nn += 1
            G = self.nd
            A = G + 2
            self.nd += 4
            ee = sedge[F]
            org[G] = X
            org[G + 1] = q
            sedge[G] = sedge[G + 1] = ee
            pb = prv[B]
            nb = nxt[B]
            if nb == B:
                nxt[G + 1] = G + 1
                prv[G + 1] = G + 1
            else:
                nxt[pb] = G + 1
                prv[G + 1] = pb
                nxt[G + 1] = nb
                prv[nb] = G + 1
            org[B] = X
            org[A] = P
            org[A + 1] = X
            sedge[A] = sedge[A + 1] = edge
            if e == F:
                tt, ts = G, B
            else:
                tt, ts = B, G
            nxt[tt] = A + 1
            prv[A + 1] = tt
            nxt[A + 1] = ts
            prv[ts] = A + 1
            nxt[ts] = tt
            prv[tt] = ts
            self._attach(c, A)
            rem[ee] = 0
            step = cyc[ee] * (1 if e == F else -1)
            self._arc(k, X, ts, ts, lam - step, rc - 1, rcyc - (1 if cyc[ee] else 0), depth + 1)
            rem[ee] = 1
            if c >= 0:
                self._unlink(A)
            org[B] = q
            if nb == B:
                nxt[B] = B
                prv[B] = B
            else:
                nxt[pb] = B
                prv[B] = pb
                nxt[B] = nb
                prv[nb] = B
            self.nd -= 4
            self.nn -= 1
            self.choices.pop()

    def snapshot(self):
        nd, nn = self.nd, self.nn
        return (self.org[:nd], self.nxt[:nd], self.sedge[:nd], self.vid[:nn])
