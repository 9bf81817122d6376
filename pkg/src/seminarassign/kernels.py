"""Hot search loops, compiled with numba by default.

Every function here is written against plain numpy arrays and
``np.random.Generator`` so that the exact same source runs in two ways:

* compiled via ``@njit`` (the default when numba is importable), or
* interpreted as ordinary Python, selected by setting the environment
  variable ``SEMINARASSIGN_NO_NUMBA=1`` before import.

numba draws from ``Generator`` with the same bit stream as numpy itself, so
the two backends produce byte-identical archives for the same seed; the test
suite relies on this.  ``benchmarks/backend_bench.py`` compares their speed.

Topics, students, and staff groups are 0-based int64 indices throughout.
Scaled imbalance: an instance precomputes L = lcm over groups of the group
capacity sums and scale_k = L / capacity_k; the imbalance of a count vector
is then (max_k count_k*scale_k - min_k count_k*scale_k) with implicit
denominator L, kept exact in int64.
"""

import os

import numpy as np

ENV_FLAG = "SEMINARASSIGN_NO_NUMBA"


def _numba_wanted() -> bool:
    if os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_wanted()
BACKEND = "numba" if NUMBA_ENABLED else "python"

if NUMBA_ENABLED:
    from numba import njit
    from numba import types as _nbt
    from numba.typed import List as _TypedList

    def _jit(fn):
        return njit(cache=True)(fn)

    def new_scalar_list():
        return _TypedList.empty_list(_nbt.int64)

    def new_matrix_list():
        return _TypedList.empty_list(_nbt.int64[:, ::1])

    def new_vector_list():
        return _TypedList.empty_list(_nbt.int64[::1])
else:
    def _jit(fn):
        return fn

    def new_scalar_list():
        return []

    def new_matrix_list():
        return []

    def new_vector_list():
        return []


# Neighborhood kind codes shared with the Python layer.
SWAP2 = 0
SWAP3 = 1
SHIFT = 2
SHIFT_SWAP2 = 3

# Slots of the int64 state/stats vectors threaded through the chunk loops.
SO_SIZE, SO_BEST, SO_CAPPED, SO_ACCEPTED, SO_NOMOVE = 0, 1, 2, 3, 4
PA_TOTAL, PA_ACCEPTED, PA_NOMOVE = 0, 1, 2


@_jit
def full_utility(weights, topic_of):
    total = 0
    for i in range(topic_of.shape[0]):
        total += weights[i, topic_of[i]]
    return total


@_jit
def count_topics(topic_of, count):
    for j in range(count.shape[0]):
        count[j] = 0
    for i in range(topic_of.shape[0]):
        count[topic_of[i]] += 1


@_jit
def group_counts(count, group_of, gcount):
    for k in range(gcount.shape[0]):
        gcount[k] = 0
    for j in range(count.shape[0]):
        gcount[group_of[j]] += count[j]


@_jit
def scaled_imbalance(gcount, group_scale):
    hi = gcount[0] * group_scale[0]
    lo = hi
    for k in range(1, gcount.shape[0]):
        v = gcount[k] * group_scale[k]
        if v > hi:
            hi = v
        if v < lo:
            lo = v
    return hi - lo


@_jit
def hash_topics(topic_of):
    # Small-modulus polynomial hash: never overflows int64, identical in both
    # backends.  Collisions are resolved by a full row comparison.
    h = 0
    for i in range(topic_of.shape[0]):
        h = (h * 1000003 + topic_of[i] + 1) % 1000000007
    return h


@_jit
def initial_topics(a, b, rng, out):
    """Random feasible start: shuffle students, satisfy all minima first, then
    deal the remainder to uniformly chosen topics that are still below b."""
    n = out.shape[0]
    m = a.shape[0]
    perm = np.arange(n)
    rng.shuffle(perm)
    count = np.zeros(m, np.int64)
    pos = 0
    for j in range(m):
        for _ in range(a[j]):
            out[perm[pos]] = j
            count[j] += 1
            pos += 1
    for idx in range(pos, n):
        open_topics = 0
        for j in range(m):
            if count[j] < b[j]:
                open_topics += 1
        r = rng.integers(0, open_topics)
        pick = -1
        for j in range(m):
            if count[j] < b[j]:
                if r == 0:
                    pick = j
                    break
                r -= 1
        out[perm[idx]] = pick
        count[pick] += 1


@_jit
def propose_swap2(topic_of, count, rng, mv_stu, mv_from, mv_to, base):
    """Exchange the topics of two students on different topics.

    Writes relocations at mv_*[base:base+2]; returns the relocation count,
    0 when no move exists.  Counts are unchanged by the move.
    """
    n = topic_of.shape[0]
    occupied = 0
    for j in range(count.shape[0]):
        if count[j] > 0:
            occupied += 1
    if occupied < 2:
        return 0
    i = rng.integers(0, n)
    j = topic_of[i]
    r = rng.integers(0, n - count[j])
    k = -1
    for s in range(n):
        if topic_of[s] != j:
            if r == 0:
                k = s
                break
            r -= 1
    l = topic_of[k]
    mv_stu[base] = i
    mv_from[base] = j
    mv_to[base] = l
    mv_stu[base + 1] = k
    mv_from[base + 1] = l
    mv_to[base + 1] = j
    return 2


@_jit
def propose_swap3(topic_of, count, rng, mv_stu, mv_from, mv_to):
    """Rotate three students sitting on pairwise distinct topics: i->l, k->p, o->j."""
    n = topic_of.shape[0]
    occupied = 0
    for j in range(count.shape[0]):
        if count[j] > 0:
            occupied += 1
    if occupied < 3:
        return 0
    i = rng.integers(0, n)
    j = topic_of[i]
    r = rng.integers(0, n - count[j])
    k = -1
    for s in range(n):
        if topic_of[s] != j:
            if r == 0:
                k = s
                break
            r -= 1
    l = topic_of[k]
    r = rng.integers(0, n - count[j] - count[l])
    o = -1
    for s in range(n):
        if topic_of[s] != j and topic_of[s] != l:
            if r == 0:
                o = s
                break
            r -= 1
    p = topic_of[o]
    mv_stu[0] = i
    mv_from[0] = j
    mv_to[0] = l
    mv_stu[1] = k
    mv_from[1] = l
    mv_to[1] = p
    mv_stu[2] = o
    mv_from[2] = p
    mv_to[2] = j
    return 3


@_jit
def propose_shift(topic_of, count, a, b, rng, mv_stu, mv_from, mv_to):
    """Relocate one student from a topic above its minimum to another below its maximum.

    Donor, student within the donor, and receiver are each drawn uniformly
    among the currently valid choices; a donor is valid only when a receiver
    other than itself exists.
    """
    n = topic_of.shape[0]
    m = count.shape[0]
    receivers = 0
    only_receiver = -1
    for j in range(m):
        if count[j] < b[j]:
            receivers += 1
            only_receiver = j
    if receivers == 0:
        return 0
    donors = 0
    for j in range(m):
        if count[j] > a[j] and (receivers >= 2 or j != only_receiver):
            donors += 1
    if donors == 0:
        return 0
    r = rng.integers(0, donors)
    donor = -1
    for j in range(m):
        if count[j] > a[j] and (receivers >= 2 or j != only_receiver):
            if r == 0:
                donor = j
                break
            r -= 1
    r = rng.integers(0, count[donor])
    student = -1
    for s in range(n):
        if topic_of[s] == donor:
            if r == 0:
                student = s
                break
            r -= 1
    n_recv = receivers
    if count[donor] < b[donor]:
        n_recv -= 1
    r = rng.integers(0, n_recv)
    receiver = -1
    for j in range(m):
        if j != donor and count[j] < b[j]:
            if r == 0:
                receiver = j
                break
            r -= 1
    mv_stu[0] = student
    mv_from[0] = donor
    mv_to[0] = receiver
    return 1


@_jit
def propose_shift_swap2(topic_of, count, a, b, rng, mv_stu, mv_from, mv_to):
    """One shift followed by one independently drawn swap2 on the shifted state.

    The swap2 relocations reference the intermediate assignment, so the three
    steps apply sequentially.  The input arrays are restored before returning.
    """
    n_shift = propose_shift(topic_of, count, a, b, rng, mv_stu, mv_from, mv_to)
    if n_shift == 0:
        return 0
    student = mv_stu[0]
    donor = mv_from[0]
    receiver = mv_to[0]
    topic_of[student] = receiver
    count[donor] -= 1
    count[receiver] += 1
    n_swap = propose_swap2(topic_of, count, rng, mv_stu, mv_from, mv_to, 1)
    topic_of[student] = donor
    count[donor] += 1
    count[receiver] -= 1
    if n_swap == 0:
        return 0
    return 3


@_jit
def _propose(kind, topic_of, count, a, b, rng, mv_stu, mv_from, mv_to):
    if kind == SWAP2:
        return propose_swap2(topic_of, count, rng, mv_stu, mv_from, mv_to, 0)
    elif kind == SWAP3:
        return propose_swap3(topic_of, count, rng, mv_stu, mv_from, mv_to)
    elif kind == SHIFT:
        return propose_shift(topic_of, count, a, b, rng, mv_stu, mv_from, mv_to)
    else:
        return propose_shift_swap2(topic_of, count, a, b, rng, mv_stu, mv_from, mv_to)


@_jit
def run_single_chunk(weights, a, b, kinds, cap, sols, hashes, state, rng, n_evals,
                     cur_topic, count, mv_stu, mv_from, mv_to):
    """Consume ``n_evals`` proposals of the single-objective search.

    One iteration: draw a stored solution, draw a neighborhood kind, propose a
    neighbor, and update the equal-quality archive.  A failed proposal counts
    as one evaluation.  Every stored solution has utility state[SO_BEST], so
    the candidate value is best + delta.
    """
    n = cur_topic.shape[0]
    size = state[SO_SIZE]
    best = state[SO_BEST]
    for _ in range(n_evals):
        pick = rng.integers(0, size)
        for i in range(n):
            cur_topic[i] = sols[pick, i]
        count_topics(cur_topic, count)
        kind = kinds[rng.integers(0, kinds.shape[0])]
        n_rel = _propose(kind, cur_topic, count, a, b, rng, mv_stu, mv_from, mv_to)
        if n_rel == 0:
            state[SO_NOMOVE] += 1
            continue
        delta = 0
        for t in range(n_rel):
            delta += weights[mv_stu[t], mv_to[t]] - weights[mv_stu[t], mv_from[t]]
        cand = best + delta
        if cand < best:
            continue
        for t in range(n_rel):
            cur_topic[mv_stu[t]] = mv_to[t]
        h = hash_topics(cur_topic)
        if cand > best:
            best = cand
            size = 1
            for i in range(n):
                sols[0, i] = cur_topic[i]
            hashes[0] = h
            state[SO_CAPPED] = 0
            state[SO_ACCEPTED] += 1
        else:
            duplicate = False
            for s in range(size):
                if hashes[s] == h:
                    same = True
                    for i in range(n):
                        if sols[s, i] != cur_topic[i]:
                            same = False
                            break
                    if same:
                        duplicate = True
                        break
            if not duplicate:
                if size < cap:
                    for i in range(n):
                        sols[size, i] = cur_topic[i]
                    hashes[size] = h
                    size += 1
                    state[SO_ACCEPTED] += 1
                else:
                    state[SO_CAPPED] = 1
    state[SO_SIZE] = size
    state[SO_BEST] = best


@_jit
def run_pareto_chunk(weights, a, b, kinds, cap, group_of, group_scale,
                     pu, pv, pcnt, pcap, psol, phash, stats, rng, n_evals,
                     cur_topic, count, gcount, mv_stu, mv_from, mv_to):
    """Consume ``n_evals`` proposals of the bi-objective search.

    The archive is a set of mutually nondominated outcome points (utility,
    scaled imbalance), each with its set of distinct solutions.  The walk
    draws uniformly over all stored solutions across points.  Dominated
    candidates are discarded; a nondominated candidate joins or creates its
    point and evicts every point it dominates.
    """
    n = cur_topic.shape[0]
    total = stats[PA_TOTAL]
    for _ in range(n_evals):
        r = rng.integers(0, total)
        p = 0
        while r >= pcnt[p]:
            r -= pcnt[p]
            p += 1
        buf = psol[p]
        for i in range(n):
            cur_topic[i] = buf[r, i]
        count_topics(cur_topic, count)
        group_counts(count, group_of, gcount)
        kind = kinds[rng.integers(0, kinds.shape[0])]
        n_rel = _propose(kind, cur_topic, count, a, b, rng, mv_stu, mv_from, mv_to)
        if n_rel == 0:
            stats[PA_NOMOVE] += 1
            continue
        delta = 0
        for t in range(n_rel):
            delta += weights[mv_stu[t], mv_to[t]] - weights[mv_stu[t], mv_from[t]]
        cand_u = pu[p] + delta
        for t in range(n_rel):
            gcount[group_of[mv_from[t]]] -= 1
            gcount[group_of[mv_to[t]]] += 1
        cand_v = scaled_imbalance(gcount, group_scale)
        n_pts = len(pu)
        same_point = -1
        dominated = False
        for q in range(n_pts):
            uq = pu[q]
            vq = pv[q]
            if uq == cand_u and vq == cand_v:
                same_point = q
                break
            if uq >= cand_u and vq <= cand_v:
                dominated = True
                break
        if dominated:
            continue
        for t in range(n_rel):
            cur_topic[mv_stu[t]] = mv_to[t]
        h = hash_topics(cur_topic)
        if same_point >= 0:
            q = same_point
            cnt = pcnt[q]
            hbuf = phash[q]
            sbuf = psol[q]
            duplicate = False
            for s in range(cnt):
                if hbuf[s] == h:
                    same = True
                    for i in range(n):
                        if sbuf[s, i] != cur_topic[i]:
                            same = False
                            break
                    if same:
                        duplicate = True
                        break
            if not duplicate:
                if cnt < cap:
                    if cnt == sbuf.shape[0]:
                        grow = 2 * cnt
                        if grow > cap:
                            grow = cap
                        nsol = np.empty((grow, n), np.int64)
                        nhash = np.empty(grow, np.int64)
                        for s in range(cnt):
                            nhash[s] = hbuf[s]
                            for i in range(n):
                                nsol[s, i] = sbuf[s, i]
                        psol[q] = nsol
                        phash[q] = nhash
                        sbuf = nsol
                        nhash[cnt] = h
                        for i in range(n):
                            nsol[cnt, i] = cur_topic[i]
                    else:
                        hbuf[cnt] = h
                        for i in range(n):
                            sbuf[cnt, i] = cur_topic[i]
                    pcnt[q] = cnt + 1
                    total += 1
                    stats[PA_ACCEPTED] += 1
                else:
                    pcap[q] = 1
        else:
            # Evict stored points the candidate dominates (equality was
            # handled above, so weak dominance here is strict in one).
            q = 0
            while q < len(pu):
                if cand_u >= pu[q] and cand_v <= pv[q]:
                    total -= pcnt[q]
                    last = len(pu) - 1
                    pu[q] = pu[last]
                    pv[q] = pv[last]
                    pcnt[q] = pcnt[last]
                    pcap[q] = pcap[last]
                    psol[q] = psol[last]
                    phash[q] = phash[last]
                    pu.pop()
                    pv.pop()
                    pcnt.pop()
                    pcap.pop()
                    psol.pop()
                    phash.pop()
                else:
                    q += 1
            start = 4
            if cap < start:
                start = cap
            nsol = np.empty((start, n), np.int64)
            nhash = np.empty(start, np.int64)
            for i in range(n):
                nsol[0, i] = cur_topic[i]
            nhash[0] = h
            pu.append(cand_u)
            pv.append(cand_v)
            pcnt.append(1)
            pcap.append(0)
            psol.append(nsol)
            phash.append(nhash)
            total += 1
            stats[PA_ACCEPTED] += 1
    stats[PA_TOTAL] = total
