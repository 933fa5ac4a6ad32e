"""Array-packed DFS kernel for the Hamilton path search, JIT-compiled.

This module holds only the hot loop.  It mirrors the pure-Python fast engine
in :mod:`.enumeration` exactly: same adjacency order, same node accounting,
same conservative prunes (definite sink/source counters over all faces of
dimension 2..d, surviving-orientation lists per 3-face).  It returns every
depth-|V| leaf that survives the prunes; the caller re-verifies leaves with
the public is_aof / is_hk predicates and canonicalizes them, so no
correctness-relevant logic lives only here.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly by engine selection
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


class PackedSearch:
    """Flat-array form of a search context, ready for the kernel.

    Parameters mirror the fields of the enumeration context; ``adj`` may be a
    narrowed adjacency (used to split the search into independent subtrees).
    """

    def __init__(self, ctx, adj=None):
        adj = ctx.adj if adj is None else adj
        nverts = len(ctx.verts)
        self.nverts = nverts

        self.adj_start = np.zeros(nverts + 1, np.int32)
        flat = []
        for v in range(nverts):
            flat.extend(adj[v])
            self.adj_start[v + 1] = len(flat)
        self.adj_flat = np.array(flat, np.int32)

        # directed edge ids over the FULL graph (prunes must see every edge
        # incident to the appended vertex, narrowed or not)
        eid = np.full(nverts * nverts, -1, np.int32)
        directed = []
        for (u, w) in ctx.edge_faces:
            eid[u * nverts + w] = len(directed)
            directed.append((u, w))
        self.eid = eid

        ef_start = np.zeros(len(directed) + 1, np.int32)
        ef_fid, ef_su, ef_sw = [], [], []
        lfe_start = np.zeros(len(directed) + 1, np.int32)
        lfe_f3, lfe_bit, lfe_req = [], [], []
        for e, (u, w) in enumerate(directed):
            for fid, su, sw in ctx.edge_faces[(u, w)]:
                ef_fid.append(fid)
                ef_su.append(su)
                ef_sw.append(sw)
            ef_start[e + 1] = len(ef_fid)
            req = 1 if u < w else 0
            for f3, bit in ctx.lf_edges.get((u, w), ()):
                lfe_f3.append(f3)
                lfe_bit.append(bit)
                lfe_req.append(req)
            lfe_start[e + 1] = len(lfe_f3)
        self.ef_start = ef_start
        self.ef_fid = np.array(ef_fid, np.int32)
        self.ef_su = np.array(ef_su, np.int32)
        self.ef_sw = np.array(ef_sw, np.int32)
        self.lfe_start = lfe_start
        self.lfe_f3 = np.array(lfe_f3, np.int32)
        self.lfe_bit = np.array(lfe_bit, np.int32)
        self.lfe_req = np.array(lfe_req, np.int32)

        self.deg_flat = np.array(ctx.deg_flat, np.int32)
        self.nfaces = len(ctx.face_members)

        n3 = len(ctx.lf_masks)
        self.masks_start = np.zeros(n3 + 1, np.int32)
        masks = []
        for f3 in range(n3):
            masks.extend(ctx.lf_masks[f3])
            self.masks_start[f3 + 1] = len(masks)
        self.masks_flat = np.array(masks, np.int64)

        # journal capacities: one out+in entry per (face, oriented edge)
        # incidence, one sink/source entry per counter slot, one alive change
        # per (3-face, oriented edge) incidence
        self.cap_ef = len(ef_fid) + 8
        self.cap_slot = len(ctx.deg_flat) + 8
        self.cap_lf = len(lfe_f3) + 8

    def run(self, starts, budget):
        """Run the kernel; returns (leaf paths as a 2-D array, nodes, exceeded)."""
        starts_arr = np.array(list(starts), np.int32)
        budget_arr = np.int64(-1 if budget is None else budget)
        leaves, nleaves, nodes, exceeded = _kernel(
            np.int32(self.nverts),
            self.adj_start,
            self.adj_flat,
            self.eid,
            self.ef_start,
            self.ef_fid,
            self.ef_su,
            self.ef_sw,
            self.deg_flat,
            np.int32(self.nfaces),
            self.lfe_start,
            self.lfe_f3,
            self.lfe_bit,
            self.lfe_req,
            self.masks_start,
            self.masks_flat,
            starts_arr,
            budget_arr,
            np.int32(self.cap_ef),
            np.int32(self.cap_slot),
            np.int32(self.cap_lf),
        )
        paths = leaves[: nleaves * self.nverts].reshape(nleaves, self.nverts)
        return paths, int(nodes), bool(exceeded)


@njit(cache=True)
def _kernel(
    nverts,
    adj_start,
    adj_flat,
    eid,
    ef_start,
    ef_fid,
    ef_su,
    ef_sw,
    deg_flat,
    nfaces,
    lfe_start,
    lfe_f3,
    lfe_bit,
    lfe_req,
    masks_start,
    masks_flat,
    starts,
    budget,
    cap_ef,
    cap_slot,
    cap_lf,
):  # pragma: no cover - covered via cross-engine equality tests
    nslots = deg_flat.shape[0]
    n3 = masks_start.shape[0] - 1

    in_cnt = np.zeros(nslots, np.int32)
    out_cnt = np.zeros(nslots, np.int32)
    sink_cnt = np.zeros(nfaces, np.int32)
    source_cnt = np.zeros(nfaces, np.int32)
    masks_work = masks_flat.copy()
    lf_alive = np.empty(n3, np.int32)
    for i in range(n3):
        lf_alive[i] = masks_start[i + 1] - masks_start[i]

    visited = np.zeros(nverts, np.uint8)
    path = np.empty(nverts, np.int32)
    nbr_ptr = np.empty(nverts, np.int32)

    j_out = np.empty(cap_ef, np.int32)
    j_in = np.empty(cap_ef, np.int32)
    j_fsink = np.empty(cap_slot, np.int32)
    j_fsource = np.empty(cap_slot, np.int32)
    j_lf_f3 = np.empty(cap_lf, np.int32)
    j_lf_old = np.empty(cap_lf, np.int32)
    p_out = 0
    p_in = 0
    p_fsink = 0
    p_fsource = 0
    p_lf = 0
    m_out = np.empty(nverts, np.int32)
    m_in = np.empty(nverts, np.int32)
    m_fsink = np.empty(nverts, np.int32)
    m_fsource = np.empty(nverts, np.int32)
    m_lf = np.empty(nverts, np.int32)

    leaves = np.empty(256 * nverts, np.int32)
    nleaves = 0
    nodes = np.int64(0)
    exceeded = False

    for si in range(starts.shape[0]):
        if exceeded:
            break
        s = starts[si]
        nodes += 1
        if budget >= 0 and nodes > budget:
            exceeded = True
            break
        depth = 0
        path[0] = s
        visited[s] = 1
        m_out[0] = p_out
        m_in[0] = p_in
        m_fsink[0] = p_fsink
        m_fsource[0] = p_fsource
        m_lf[0] = p_lf
        nbr_ptr[0] = adj_start[s]

        while depth >= 0:
            if depth == nverts - 1:
                if (nleaves + 1) * nverts > leaves.shape[0]:
                    bigger = np.empty(leaves.shape[0] * 2, np.int32)
                    bigger[: leaves.shape[0]] = leaves
                    leaves = bigger
                base = nleaves * nverts
                for i in range(nverts):
                    leaves[base + i] = path[i]
                nleaves += 1
                # fall through to pop
                while p_lf > m_lf[depth]:
                    p_lf -= 1
                    lf_alive[j_lf_f3[p_lf]] = j_lf_old[p_lf]
                while p_fsink > m_fsink[depth]:
                    p_fsink -= 1
                    sink_cnt[j_fsink[p_fsink]] -= 1
                while p_fsource > m_fsource[depth]:
                    p_fsource -= 1
                    source_cnt[j_fsource[p_fsource]] -= 1
                while p_out > m_out[depth]:
                    p_out -= 1
                    out_cnt[j_out[p_out]] -= 1
                while p_in > m_in[depth]:
                    p_in -= 1
                    in_cnt[j_in[p_in]] -= 1
                visited[path[depth]] = 0
                depth -= 1
                continue

            v = path[depth]
            ptr = nbr_ptr[depth]
            advanced = False
            vend = adj_start[v + 1]
            while ptr < vend:
                w = adj_flat[ptr]
                ptr += 1
                if visited[w] == 1:
                    continue
                nodes += 1
                if budget >= 0 and nodes > budget:
                    exceeded = True
                    break
                s_out = p_out
                s_in = p_in
                s_fsink = p_fsink
                s_fsource = p_fsource
                s_lf = p_lf
                dead = False
                for ai in range(adj_start[w], adj_start[w + 1]):
                    u = adj_flat[ai]
                    if visited[u] == 0:
                        continue
                    e = eid[u * nverts + w]
                    for k in range(ef_start[e], ef_start[e + 1]):
                        su = ef_su[k]
                        sw = ef_sw[k]
                        fid = ef_fid[k]
                        out_cnt[su] += 1
                        j_out[p_out] = su
                        p_out += 1
                        if out_cnt[su] == deg_flat[su]:
                            source_cnt[fid] += 1
                            j_fsource[p_fsource] = fid
                            p_fsource += 1
                            if source_cnt[fid] >= 2:
                                dead = True
                        in_cnt[sw] += 1
                        j_in[p_in] = sw
                        p_in += 1
                        if in_cnt[sw] == deg_flat[sw]:
                            sink_cnt[fid] += 1
                            j_fsink[p_fsink] = fid
                            p_fsink += 1
                            if sink_cnt[fid] >= 2:
                                dead = True
                    if dead:
                        break
                    for k in range(lfe_start[e], lfe_start[e + 1]):
                        f3 = lfe_f3[k]
                        bit = lfe_bit[k]
                        req = lfe_req[k]
                        alive = lf_alive[f3]
                        mbase = masks_start[f3]
                        i2 = 0
                        while i2 < alive:
                            if ((masks_work[mbase + i2] >> bit) & 1) == req:
                                i2 += 1
                            else:
                                alive -= 1
                                tmp = masks_work[mbase + i2]
                                masks_work[mbase + i2] = masks_work[mbase + alive]
                                masks_work[mbase + alive] = tmp
                        if alive != lf_alive[f3]:
                            j_lf_f3[p_lf] = f3
                            j_lf_old[p_lf] = lf_alive[f3]
                            p_lf += 1
                            lf_alive[f3] = alive
                            if alive == 0:
                                dead = True
                                break
                    if dead:
                        break
                if dead:
                    while p_lf > s_lf:
                        p_lf -= 1
                        lf_alive[j_lf_f3[p_lf]] = j_lf_old[p_lf]
                    while p_fsink > s_fsink:
                        p_fsink -= 1
                        sink_cnt[j_fsink[p_fsink]] -= 1
                    while p_fsource > s_fsource:
                        p_fsource -= 1
                        source_cnt[j_fsource[p_fsource]] -= 1
                    while p_out > s_out:
                        p_out -= 1
                        out_cnt[j_out[p_out]] -= 1
                    while p_in > s_in:
                        p_in -= 1
                        in_cnt[j_in[p_in]] -= 1
                    continue
                nbr_ptr[depth] = ptr
                depth += 1
                path[depth] = w
                visited[w] = 1
                m_out[depth] = s_out
                m_in[depth] = s_in
                m_fsink[depth] = s_fsink
                m_fsource[depth] = s_fsource
                m_lf[depth] = s_lf
                nbr_ptr[depth] = adj_start[w]
                advanced = True
                break
            if advanced:
                continue
            # budget hit or neighbors exhausted: unwind this depth
            while p_lf > m_lf[depth]:
                p_lf -= 1
                lf_alive[j_lf_f3[p_lf]] = j_lf_old[p_lf]
            while p_fsink > m_fsink[depth]:
                p_fsink -= 1
                sink_cnt[j_fsink[p_fsink]] -= 1
            while p_fsource > m_fsource[depth]:
                p_fsource -= 1
                source_cnt[j_fsource[p_fsource]] -= 1
            while p_out > m_out[depth]:
                p_out -= 1
                out_cnt[j_out[p_out]] -= 1
            while p_in > m_in[depth]:
                p_in -= 1
                in_cnt[j_in[p_in]] -= 1
            visited[path[depth]] = 0
            depth -= 1
            if exceeded:
                break
        if exceeded:
            break

    return leaves, nleaves, nodes, exceeded


@njit(cache=True)
def monotone_best_counts(orders, adj_start, adj_flat):
    """Longest-path vertex counts for many vertex orders at once.

    ``orders[:, s]`` lists vertex ids in increasing objective value for
    sample ``s``; the result is, per sample, the number of vertices on the
    longest path of the adjacency graph that respects that order (dynamic
    programming in rank order).
    """
    nlab, nsamples = orders.shape
    out = np.empty(nsamples, np.int32)
    best = np.empty(nlab, np.int32)
    pos = np.empty(nlab, np.int32)
    for s in range(nsamples):
        for r in range(nlab):
            pos[orders[r, s]] = r
        bmax = 1
        for r in range(nlab):
            v = orders[r, s]
            b = 1
            for e in range(adj_start[v], adj_start[v + 1]):
                pu = pos[adj_flat[e]]
                if pu < r and best[pu] + 1 > b:
                    b = best[pu] + 1
            best[r] = b
            if b > bmax:
                bmax = b
        out[s] = bmax
    return out
