# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled execution kernels; contract documented in _kernels_py."""

HALTED, EXITED, INACTIVE, BUDGET = 0, 1, 2, 3

IMPLEMENTATION = "cython"


cdef inline (int, long) _svc(int kind, long content, int mcode):
    if content < 0 or mcode < 0:
        return 2, -1
    if kind == 0:
        if mcode == 0:
            return <int>content, content
        if mcode == 1:
            return 1, 1
        return 1, 0
    if mcode == 0:
        return 1, content + 1
    if mcode == 1:
        if content > 0:
            return 1, content - 1
        return 0, 0
    if content == 0:
        return 1, content
    return 0, content


def run_segment_kernel(ops, arg1, arg2, int prefix_len, int period_len, long entry,
                       kinds, contents, long budget_factor):
    cdef int n = prefix_len + period_len
    cdef list ops_l = list(ops)
    cdef list a1_l = list(arg1)
    cdef list a2_l = list(arg2)
    cdef list kinds_l = list(kinds)
    cdef list cont = list(contents)
    cdef long pos = entry
    cdef long steps = 0
    cdef long maxc = 0
    cdef long c, off, newc
    cdef int rep, op, slot, reply
    for c in cont:
        if c > maxc:
            maxc = c
    seen = set() if period_len else None
    while True:
        if pos > prefix_len:
            if period_len == 0:
                return EXITED, pos - prefix_len, cont
            rep = prefix_len + <int>((pos - prefix_len - 1) % period_len) + 1
        else:
            rep = <int>pos
        if seen is not None:
            key = (rep, tuple(cont))
            if key in seen:
                return INACTIVE, 0, None
            seen.add(key)
        steps += 1
        if steps > budget_factor * n * (maxc + 1):
            return BUDGET, 0, None
        op = ops_l[rep - 1]
        if op == 4:
            return HALTED, 0, cont
        if op == 3:
            off = a1_l[rep - 1]
            if off == 0:
                return INACTIVE, 0, None
            pos = pos + off
            continue
        slot = a1_l[rep - 1]
        if slot < 0:
            return INACTIVE, 0, None
        reply, newc = _svc(kinds_l[slot], cont[slot], a2_l[rep - 1])
        if reply == 2:
            return INACTIVE, 0, None
        cont[slot] = newc
        if op == 0:
            pos += 1
        elif op == 1:
            pos += 1 if reply == 1 else 2
        else:
            pos += 2 if reply == 1 else 1


def apply_kernel(node_kind, node_slot, node_method, node_then, node_else,
                 long root, kinds, contents, long budget_factor):
    cdef int n = len(node_kind)
    cdef list nk = list(node_kind)
    cdef list ns = list(node_slot)
    cdef list nm = list(node_method)
    cdef list nt = list(node_then)
    cdef list ne = list(node_else)
    cdef list kinds_l = list(kinds)
    cdef list cont = list(contents)
    cdef long cur = root
    cdef long steps = 0
    cdef long maxc = 0
    cdef long c, newc
    cdef int kind, slot, reply
    for c in cont:
        if c > maxc:
            maxc = c
    seen = set()
    while True:
        kind = nk[cur]
        if kind == 0:
            return HALTED, cont
        if kind == 1:
            return INACTIVE, None
        key = (cur, tuple(cont))
        if key in seen:
            return INACTIVE, None
        seen.add(key)
        steps += 1
        if steps > budget_factor * n * (maxc + 1):
            return BUDGET, None
        slot = ns[cur]
        if slot < 0:
            return INACTIVE, None
        reply, newc = _svc(kinds_l[slot], cont[slot], nm[cur])
        if reply == 2:
            return INACTIVE, None
        cont[slot] = newc
        cur = nt[cur] if reply == 1 else ne[cur]
