"""Independent brute-force reference implementations used to check the
library. These deliberately avoid the library's own code paths: scalar loops
instead of vectorized math, breadth-first search instead of A*, memoized
recursion instead of iterative dynamic programming."""

from __future__ import annotations

from collections import deque
from functools import lru_cache


def ray_nearest_hit(boxes, origin, direction, max_range):
    """All-box nearest hit: (object_id, distance) or None.

    boxes: iterable of (object_id, lo, hi). Interval clipping per axis with
    explicit handling of rays parallel to a slab; grazing (zero-width
    interval) counts as a hit.
    """
    best = None
    for object_id, lo, hi in boxes:
        t_enter, t_exit = 0.0, float(max_range)
        ok = True
        for axis in range(3):
            o, d = origin[axis], direction[axis]
            if d == 0.0:
                if not (lo[axis] <= o <= hi[axis]):
                    ok = False
                    break
            else:
                ta = (lo[axis] - o) / d
                tb = (hi[axis] - o) / d
                if ta > tb:
                    ta, tb = tb, ta
                if ta > t_enter:
                    t_enter = ta
                if tb < t_exit:
                    t_exit = tb
        if not ok or t_enter > t_exit:
            continue
        key = (t_enter, object_id)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[1], best[0]


def cell_is_blocked(boxes, origin, voxel_size, idx):
    """Strict-overlap test of one grid cell against every box."""
    cell_lo = [origin[a] + idx[a] * voxel_size for a in range(3)]
    cell_hi = [origin[a] + (idx[a] + 1) * voxel_size for a in range(3)]
    for lo, hi in boxes:
        if all(cell_lo[a] < hi[a] and lo[a] < cell_hi[a] for a in range(3)):
            return True
    return False


def fixations_bruteforce(times, gazes, tick_dt, dwell_threshold, gap_tolerance,
                         obstacle_ids=frozenset(), eps=1e-9):
    """Run grouping -> per-id gap merge -> span filter, coded independently.

    Returns [(object_id, start, end)] sorted by (start, object_id).
    """
    # 1. maximal runs of consecutive identical non-obstacle gaze labels
    runs = []
    i = 0
    n = len(times)
    while i < n:
        label = gazes[i]
        if label is None or label in obstacle_ids:
            i += 1
            continue
        j = i
        while j + 1 < n and gazes[j + 1] == label:
            j += 1
        runs.append((label, times[i], times[j] + tick_dt))
        i = j + 1
    # 2. merge same-id runs across small gaps
    by_id = {}
    for label, start, end in runs:
        by_id.setdefault(label, []).append((start, end))
    merged = []
    for label, spans in by_id.items():
        current = spans[0]
        for start, end in spans[1:]:
            if start - current[1] <= gap_tolerance + eps:
                current = (current[0], end)
            else:
                merged.append((label, current[0], current[1]))
                current = (start, end)
        merged.append((label, current[0], current[1]))
    # 3. keep spans reaching the dwell threshold
    kept = [(label, start, end) for label, start, end in merged
            if end - start >= dwell_threshold - eps]
    kept.sort(key=lambda item: (item[1], item[0]))
    return kept


def fold_runs(ids):
    """Collapse consecutive duplicates."""
    out = []
    for item in ids:
        if not out or out[-1] != item:
            out.append(item)
    return out


def dfg_counts(id_lists):
    """Adjacent-pair, start, and end counting by direct enumeration."""
    edges, starts, ends = {}, {}, {}
    for ids in id_lists:
        starts[ids[0]] = starts.get(ids[0], 0) + 1
        ends[ids[-1]] = ends.get(ids[-1], 0) + 1
        for k in range(len(ids) - 1):
            pair = (ids[k], ids[k + 1])
            edges[pair] = edges.get(pair, 0) + 1
    return edges, starts, ends


def pattern_supports(id_lists, max_len):
    """Support of every contiguous window of length 2..max_len, counted once
    per containing sequence."""
    support = {}
    for ids in id_lists:
        seen = set()
        for length in range(2, max_len + 1):
            for start in range(0, len(ids) - length + 1):
                seen.add(tuple(ids[start:start + length]))
        for window in seen:
            support[window] = support.get(window, 0) + 1
    return support


def attention_weights(sequences):
    """sequences: list of [(object_id, duration)]. Returns id -> weight."""
    totals, counts = {}, {}
    for entries in sequences:
        for object_id, duration in entries:
            totals[object_id] = totals.get(object_id, 0.0) + duration
            counts[object_id] = counts.get(object_id, 0) + 1
    means = {oid: totals[oid] / counts[oid] for oid in totals}
    denom = sum(means.values())
    return {oid: means[oid] / denom for oid in means}


def edit_distance_recursive(a, b):
    """Memoized top-down edit distance."""
    a, b = tuple(a), tuple(b)

    @lru_cache(maxsize=None)
    def solve(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return solve(i + 1, j + 1)
        return 1 + min(solve(i + 1, j), solve(i, j + 1), solve(i + 1, j + 1))

    return solve(0, 0)


def bfs_distance(blocked, start, goal):
    """Shortest 6-connected step count on a boolean 3D grid, or None."""
    if blocked[start] or blocked[goal]:
        return None
    dims = blocked.shape
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        cell, dist = frontier.popleft()
        if cell == goal:
            return dist
        for step in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            nxt = (cell[0] + step[0], cell[1] + step[1], cell[2] + step[2])
            if not all(0 <= nxt[a] < dims[a] for a in range(3)):
                continue
            if nxt in seen or blocked[nxt]:
                continue
            seen.add(nxt)
            frontier.append((nxt, dist + 1))
    return None
