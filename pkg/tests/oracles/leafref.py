"""Tangency census reference.

Finds circle tangencies of a plane field by brute scanning of the radial
component on a very fine grid, refines the roots by bisection, and
classifies each tangency geometrically: a short leaf segment is integrated
through the tangency point with RK4 and the census asks whether both ends
stay inside the circle (internal) or outside (external). No Jacobians and
no code shared with the package.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def _lifted_samples(field, center, radius, n, line):
    """Radial component on a uniform grid, with a sign-continuous lift
    of the direction when the field is only defined up to sign."""
    cx, cy = center
    out = []
    prev = None
    for k in range(n):
        t = TWO_PI * k / n
        nx, ny = math.cos(t), math.sin(t)
        fx, fy = field(cx + radius * nx, cy + radius * ny)
        if line and prev is not None and fx * prev[0] + fy * prev[1] < 0.0:
            fx, fy = -fx, -fy
        prev = (fx, fy)
        out.append((t, fx * nx + fy * ny, (fx, fy)))
    return out


def _rho(field, center, radius, t, ref_dir, line):
    cx, cy = center
    nx, ny = math.cos(t), math.sin(t)
    fx, fy = field(cx + radius * nx, cy + radius * ny)
    if line and fx * ref_dir[0] + fy * ref_dir[1] < 0.0:
        fx, fy = -fx, -fy
    return fx * nx + fy * ny


def find_roots(field, center=(0.0, 0.0), radius=1.0, *, line=False, n=100_000, iters=80):
    samples = _lifted_samples(field, center, radius, n, line)
    roots = []
    for k in range(n):
        t0, r0, d0 = samples[k]
        t1, r1, _ = samples[(k + 1) % n]
        if k + 1 == n:
            # Close the lift against the last direction, not the raw first
            # sample; for sign-ambiguous fields the representative may have
            # flipped over a full circuit.
            t1 = TWO_PI
            r1 = _rho(field, center, radius, t1, d0, line)
        if r0 == 0.0:
            roots.append(t0)
            continue
        if r0 * r1 < 0.0:
            lo, hi, rlo = t0, t1, r0
            for _ in range(iters):
                mid = 0.5 * (lo + hi)
                rm = _rho(field, center, radius, mid, d0, line)
                if rm == 0.0:
                    lo = hi = mid
                    break
                if (rm > 0.0) == (rlo > 0.0):
                    lo, rlo = mid, rm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    return sorted(r % TWO_PI for r in roots)


def classify(field, root_angle, center=(0.0, 0.0), radius=1.0, *, line=False,
             h=None, steps=64):
    """'internal' when a leaf arc through the tangency stays inside the
    circle on both sides, 'external' when it stays outside."""
    if h is None:
        h = 1e-4 * radius
    cx, cy = center

    def unit(px, py, ref):
        fx, fy = field(px, py)
        norm = math.hypot(fx, fy)
        fx, fy = fx / norm, fy / norm
        if ref is not None and fx * ref[0] + fy * ref[1] < 0.0:
            fx, fy = -fx, -fy
        return fx, fy

    def run(sign):
        px = cx + radius * math.cos(root_angle)
        py = cy + radius * math.sin(root_angle)
        ref = unit(px, py, None)
        if sign < 0:
            ref = (-ref[0], -ref[1])
        step = h / steps
        for _ in range(steps):
            k1 = unit(px, py, ref)
            k2 = unit(px + 0.5 * step * k1[0], py + 0.5 * step * k1[1], ref)
            k3 = unit(px + 0.5 * step * k2[0], py + 0.5 * step * k2[1], ref)
            k4 = unit(px + step * k3[0], py + step * k3[1], ref)
            px += step * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6.0
            py += step * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6.0
            ref = unit(px, py, ref)
        return math.hypot(px - cx, py - cy) - radius

    fwd, back = run(+1), run(-1)
    if fwd < 0.0 and back < 0.0:
        return "internal"
    if fwd > 0.0 and back > 0.0:
        return "external"
    return "crossing"


def census(field, center=(0.0, 0.0), radius=1.0, *, line=False, n=100_000):
    roots = find_roots(field, center, radius, line=line, n=n)
    return [(t, classify(field, t, center, radius, line=line)) for t in roots]


def second_order_fd(field, root_angle, center=(0.0, 0.0), radius=1.0, eps=1e-6):
    """2*(f.f + (p-c).(Jf f)) with a central-difference Jacobian.

    Neighbour evaluations are sign-aligned with the value at the tangency
    point so that direction fields differentiate a single representative.
    """
    cx, cy = center
    px = cx + radius * math.cos(root_angle)
    py = cy + radius * math.sin(root_angle)
    fx, fy = field(px, py)

    def at(qx, qy):
        gx, gy = field(qx, qy)
        if gx * fx + gy * fy < 0.0:
            gx, gy = -gx, -gy
        return gx, gy

    dfxx = (at(px + eps, py)[0] - at(px - eps, py)[0]) / (2 * eps)
    dfxy = (at(px, py + eps)[0] - at(px, py - eps)[0]) / (2 * eps)
    dfyx = (at(px + eps, py)[1] - at(px - eps, py)[1]) / (2 * eps)
    dfyy = (at(px, py + eps)[1] - at(px, py - eps)[1]) / (2 * eps)
    jx = dfxx * fx + dfxy * fy
    jy = dfyx * fx + dfyy * fy
    return 2.0 * (fx * fx + fy * fy + (px - cx) * jx + (py - cy) * jy)


def main():
    from windref import VECTOR_FIELDS, LINE_FIELDS  # type: ignore

    jobs = [(name, f, False, (0.0, 0.0)) for name, f in VECTOR_FIELDS.items()]
    jobs += [(name, f, True, (0.0, 0.0)) for name, f in LINE_FIELDS.items()]
    jobs.append(("rotation@(0.3,0)", VECTOR_FIELDS["rotation"], False, (0.3, 0.0)))
    for name, f, line, center in jobs:
        if name == "rotation":
            print(f"  {name:18s} radial component vanishes identically (leaf)")
            continue
        rows = census(f, center, 1.0, line=line, n=20_000)
        desc = ", ".join(f"{t:.10f}:{kind[0].upper()}" for t, kind in rows)
        print(f"  {name:18s} [{desc}]")
        for t, _ in rows:
            print(f"      h''({t:.6f}) = {second_order_fd(f, t, center):+.8f}")


if __name__ == "__main__":
    main()
