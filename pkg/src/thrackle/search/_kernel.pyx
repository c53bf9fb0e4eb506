# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Face-walk routing kernel, compiled.

Same algorithm, plan format and interface as ``_kernel_py``; the working map
lives in C int arrays and per-depth scratch buffers.
"""
from libc.stdlib cimport malloc, calloc, free


class Aborted(Exception):
    pass


cdef enum:
    S_PREV = 0
    S_CORNERS = 1
    S_FACES = 2


cdef class Router:
    cdef int *org
    cdef int *nxt
    cdef int *prv
    cdef int *sedge
    cdef int *vid
    cdef int *cyc
    cdef int *rem
    cdef int *emark
    cdef int *dmark
    cdef int *stack
    cdef int *pool
    cdef int pool_width
    cdef int max_depth
    cdef int stamp
    cdef public int nd
    cdef public int nn
    cdef public int nv
    cdef int cap_darts
    cdef int cap_nodes
    cdef int n_edges
    # plans, flattened
    cdef int n_plans
    cdef int *p_edge
    cdef int *p_start
    cdef int *p_sbeg      # offset into s_dart / s_lab
    cdef int *p_scnt
    cdef int *s_dart
    cdef int *s_lab
    cdef int *p_w         # -1 for a free end
    cdef int *p_lbeg
    cdef int *p_lcnt
    cdef int *e_lab
    cdef int *p_mbeg
    cdef int *p_mcnt
    cdef int *m_edge
    cdef bint prune_dead
    cdef bint prune_parity
    cdef long long budget
    cdef public long long nodes
    cdef public bint aborted
    cdef int *choices
    cdef int n_choices
    cdef int *prefix
    cdef int n_prefix
    cdef int count_from
    cdef int collect_depth
    cdef public list collected
    cdef object on_complete

    def __cinit__(self, org, nxt, sedge, vid, int n_edges, cyc, int n_vertices, plans,
                  prune_dead=True, prune_parity=True, budget=None):
        cdef int i, k, extra_darts = 0, extra_nodes = 0
        cdef int nd0 = len(org)
        for plan in plans:
            extra_darts += 4 * len(plan[3]) + 2
            extra_nodes += len(plan[3]) + 2
        self.cap_darts = nd0 + extra_darts
        self.cap_nodes = len(vid) + extra_nodes
        self.n_edges = n_edges + len(plans)
        self.org = <int *> malloc(self.cap_darts * sizeof(int))
        self.nxt = <int *> malloc(self.cap_darts * sizeof(int))
        self.prv = <int *> malloc(self.cap_darts * sizeof(int))
        self.sedge = <int *> malloc(self.cap_darts * sizeof(int))
        self.dmark = <int *> calloc(self.cap_darts, sizeof(int))
        self.stack = <int *> malloc((self.cap_darts + 1) * sizeof(int))
        self.vid = <int *> malloc(self.cap_nodes * sizeof(int))
        self.cyc = <int *> calloc(self.n_edges, sizeof(int))
        self.rem = <int *> calloc(self.n_edges, sizeof(int))
        self.emark = <int *> calloc(self.n_edges, sizeof(int))
        for i in range(self.cap_darts):
            self.org[i] = -1
            self.nxt[i] = -1
            self.sedge[i] = -1
        for i in range(nd0):
            self.org[i] = org[i]
            self.nxt[i] = nxt[i]
            self.sedge[i] = sedge[i]
        for i in range(nd0):
            self.prv[self.nxt[i]] = i
        for i in range(self.cap_nodes):
            self.vid[i] = vid[i] if i < len(vid) else -1
        for i in range(len(cyc)):
            self.cyc[i] = cyc[i]
        self.nd = nd0
        self.nn = len(vid)
        self.nv = n_vertices
        # one scratch row of options per search depth
        self.max_depth = extra_nodes + 4 * len(plans) + 8
        self.pool_width = self.cap_darts + 1
        self.pool = <int *> malloc(self.max_depth * self.pool_width * sizeof(int))
        self.choices = <int *> malloc(self.max_depth * sizeof(int))
        self.prefix = <int *> malloc(self.max_depth * sizeof(int))
        # flatten plans
        self.n_plans = len(plans)
        cdef int n = self.n_plans
        self.p_edge = <int *> malloc(n * sizeof(int))
        self.p_start = <int *> malloc(n * sizeof(int))
        self.p_sbeg = <int *> malloc(n * sizeof(int))
        self.p_scnt = <int *> malloc(n * sizeof(int))
        self.p_w = <int *> malloc(n * sizeof(int))
        self.p_lbeg = <int *> malloc(n * sizeof(int))
        self.p_lcnt = <int *> malloc(n * sizeof(int))
        self.p_mbeg = <int *> malloc(n * sizeof(int))
        self.p_mcnt = <int *> malloc(n * sizeof(int))
        cdef int ns = 0, nl = 0, nm = 0
        for plan in plans:
            if plan[1][0] != "prev":
                ns += len(plan[1][1])
            if plan[2][0] == "vertex":
                nl += len(plan[2][2])
            nm += len(plan[3])
        self.s_dart = <int *> malloc((ns + 1) * sizeof(int))
        self.s_lab = <int *> malloc((ns + 1) * sizeof(int))
        self.e_lab = <int *> malloc((nl + 1) * sizeof(int))
        self.m_edge = <int *> malloc((nm + 1) * sizeof(int))
        ns = nl = nm = 0
        for k in range(n):
            edge, start, end, must = plans[k]
            self.p_edge[k] = edge
            self.p_sbeg[k] = ns
            if start[0] == "prev":
                self.p_start[k] = S_PREV
                self.p_scnt[k] = 0
            else:
                self.p_start[k] = S_CORNERS if start[0] == "corners" else S_FACES
                self.p_scnt[k] = len(start[1])
                for dart, lab in start[1]:
                    self.s_dart[ns] = dart
                    self.s_lab[ns] = lab
                    ns += 1
            self.p_lbeg[k] = nl
            if end[0] == "vertex":
                self.p_w[k] = end[1]
                self.p_lcnt[k] = len(end[2])
                for lab in end[2]:
                    self.e_lab[nl] = lab
                    nl += 1
            else:
                self.p_w[k] = -1
                self.p_lcnt[k] = 0
            self.p_mbeg[k] = nm
            self.p_mcnt[k] = len(must)
            for e in must:
                self.m_edge[nm] = e
                nm += 1
        self.prune_dead = prune_dead
        self.prune_parity = prune_parity
        self.budget = -1 if budget is None else budget
        self.nodes = 0
        self.aborted = False
        self.stamp = 0
        self.n_choices = 0
        self.n_prefix = 0
        self.count_from = 0
        self.collect_depth = -1
        self.collected = []

    def __dealloc__(self):
        free(self.org); free(self.nxt); free(self.prv); free(self.sedge)
        free(self.dmark); free(self.stack); free(self.vid); free(self.cyc)
        free(self.rem); free(self.emark); free(self.pool); free(self.choices)
        free(self.prefix); free(self.p_edge); free(self.p_start); free(self.p_sbeg)
        free(self.p_scnt); free(self.p_w); free(self.p_lbeg); free(self.p_lcnt)
        free(self.p_mbeg); free(self.p_mcnt); free(self.s_dart); free(self.s_lab)
        free(self.e_lab); free(self.m_edge)

    # -- primitive edits -------------------------------------------------

    cdef inline void _insert_after(self, int c, int a):
        cdef int n = self.nxt[c]
        self.nxt[c] = a
        self.prv[a] = c
        self.nxt[a] = n
        self.prv[n] = a

    cdef inline void _unlink(self, int a):
        cdef int p = self.prv[a], n = self.nxt[a]
        self.nxt[p] = n
        self.prv[n] = p

    cdef inline void _attach(self, int c, int a):
        if c < 0:
            self.nxt[a] = a
            self.prv[a] = a
        else:
            self._insert_after(c, a)

    # -- queries -----------------------------------------------------------

    cdef int _orbit(self, int d0, int *out):
        cdef int n = 1, d
        out[0] = d0
        d = self.prv[d0 ^ 1]
        while d != d0:
            out[n] = d
            n += 1
            d = self.prv[d ^ 1]
        return n

    cdef bint _dead(self, int fd, int rc, int w):
        self.stamp += 1
        cdef int st = self.stamp, seen = 0, top = 0, d0, d, e
        cdef bint found_w = w < 0
        self.stack[top] = fd
        top += 1
        while top:
            top -= 1
            d0 = self.stack[top]
            if self.dmark[d0] == st:
                continue
            d = d0
            while True:
                self.dmark[d] = st
                e = self.sedge[d]
                if self.rem[e]:
                    if self.emark[e] != st:
                        self.emark[e] = st
                        seen += 1
                    if self.dmark[d ^ 1] != st:
                        self.stack[top] = d ^ 1
                        top += 1
                if not found_w and self.org[d] == w:
                    found_w = True
                d = self.prv[d ^ 1]
                if d == d0:
                    break
        return seen < rc or not found_w

    # -- search ------------------------------------------------------------

    cdef int _visit(self, int depth) except -1:
        if depth == self.collect_depth:
            self.collected.append(tuple([self.choices[i] for i in range(self.n_choices)]))
            return 0
        if depth >= self.count_from:
            self.nodes += 1
            if self.budget >= 0 and self.nodes > self.budget:
                self.aborted = True
                raise Aborted
        return 1

    cdef inline bint _take(self, int depth, int i):
        if depth < self.n_prefix:
            return self.prefix[depth] == i
        return True

    def run(self, on_complete, prefix=(), collect_depth=-1):
        self.on_complete = on_complete
        self.n_prefix = len(prefix)
        for i in range(self.n_prefix):
            self.prefix[i] = prefix[i]
        self.count_from = self.n_prefix
        self.collect_depth = collect_depth
        self.collected = []
        try:
            self._start_arc(0, -1, -1, 0, 0)
        except Aborted:
            pass
        return self.nodes, self.aborted

    cdef int _start_arc(self, int k, int P, int c, int lam, int depth) except -1:
        cdef int i, j, rc, rcyc, b, c0
        if k == self.n_plans:
            if not self._visit(depth):
                return 0
            self.on_complete(self)
            return 0
        b = self.p_mbeg[k]
        rc = self.p_mcnt[k]
        rcyc = 0
        for j in range(rc):
            self.rem[self.m_edge[b + j]] = 1
            if self.cyc[self.m_edge[b + j]]:
                rcyc += 1
        try:
            if self.p_start[k] == S_PREV:
                self._arc(k, P, c, c, lam, rc, rcyc, depth)
            elif self.p_start[k] == S_CORNERS:
                if not self._visit(depth):
                    return 0
                for i in range(self.p_scnt[k]):
                    if not self._take(depth, i):
                        continue
                    c0 = self.s_dart[self.p_sbeg[k] + i]
                    self.choices[self.n_choices] = i
                    self.n_choices += 1
                    self._arc(k, self.org[c0], c0, c0, self.s_lab[self.p_sbeg[k] + i],
                              rc, rcyc, depth + 1)
                    self.n_choices -= 1
            else:
                if not self._visit(depth):
                    return 0
                for i in range(self.p_scnt[k]):
                    if not self._take(depth, i):
                        continue
                    P = self.nn
                    self.nn += 1
                    self.vid[P] = self.nv
                    self.nv += 1
                    self.choices[self.n_choices] = i
                    self.n_choices += 1
                    self._arc(k, P, -1, self.s_dart[self.p_sbeg[k] + i],
                              self.s_lab[self.p_sbeg[k] + i], rc, rcyc, depth + 1)
                    self.n_choices -= 1
                    self.nv -= 1
                    self.vid[P] = -1
                    self.nn -= 1
        finally:
            for j in range(rc):
                self.rem[self.m_edge[b + j]] = 0
        return 0

    cdef int _arc(self, int k, int P, int c, int fd, int lam, int rc, int rcyc,
                  int depth) except -1:
        cdef int w, i, j, mu, gap, n_orb, n_opt, x, A, Q, e, F, B, q, X, G, ee
        cdef int pb, nb, tt, ts, step, edge
        cdef bint ok
        cdef int *opts
        if not self._visit(depth):
            return 0
        if depth >= self.max_depth:
            raise RuntimeError("search depth exceeds scratch space")
        edge = self.p_edge[k]
        w = self.p_w[k]
        if self.prune_parity and w >= 0 and self.p_lcnt[k] > 0:
            ok = False
            for j in range(self.p_lcnt[k]):
                mu = self.e_lab[self.p_lbeg[k] + j]
                gap = lam - mu if lam >= mu else mu - lam
                if gap <= rcyc and (rcyc - gap) % 2 == 0:
                    ok = True
                    break
            if not ok:
                return 0
        if self.prune_dead and (rc > 0 or w >= 0) and self._dead(fd, rc, w):
            return 0
        opts = self.pool + depth * self.pool_width
        n_orb = self._orbit(fd, opts)
        cdef int *org = self.org
        cdef int *nxt = self.nxt
        cdef int *prv = self.prv
        cdef int *sedge = self.sedge
        if rc == 0:
            n_opt = 0
            if w < 0:
                opts[0] = -1
                n_opt = 1
            else:
                for j in range(n_orb):
                    if org[opts[j]] == w:
                        opts[n_opt] = opts[j]
                        n_opt += 1
            for i in range(n_opt):
                if not self._take(depth, i):
                    continue
                x = opts[i]
                self.choices[self.n_choices] = i
                self.n_choices += 1
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
                sedge[A] = edge
                sedge[A + 1] = edge
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
                self.n_choices -= 1
            return 0
        n_opt = 0
        for j in range(n_orb):
            if self.rem[sedge[opts[j]]]:
                opts[n_opt] = opts[j]
                n_opt += 1
        for i in range(n_opt):
            if not self._take(depth, i):
                continue
            e = opts[i]
            self.choices[self.n_choices] = i
            self.n_choices += 1
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
            sedge[G] = ee
            sedge[G + 1] = ee
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
            sedge[A] = edge
            sedge[A + 1] = edge
            if e == F:
                tt = G
                ts = B
            else:
                tt = B
                ts = G
            nxt[tt] = A + 1
            prv[A + 1] = tt
            nxt[A + 1] = ts
            prv[ts] = A + 1
            nxt[ts] = tt
            prv[tt] = ts
            self._attach(c, A)
            self.rem[ee] = 0
            step = self.cyc[ee] * (1 if e == F else -1)
            try:
                self._arc(k, X, ts, ts, lam - step, rc - 1,
                          rcyc - (1 if self.cyc[ee] else 0), depth + 1)
            finally:
                self.rem[ee] = 1
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
                self.n_choices -= 1
        return 0

    def snapshot(self):
        cdef int i
        return ([self.org[i] for i in range(self.nd)],
                [self.nxt[i] for i in range(self.nd)],
                [self.sedge[i] for i in range(self.nd)],
                [self.vid[i] for i in range(self.nn)])
