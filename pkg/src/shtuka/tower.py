"""The configured class-field tower and its validation.

The extension H/K is supplied by configuration (minimal polynomial of
the generator u, Galois images of u, coordinates of the distinguished
point V, and branch hints for embedding u into the Laurent field).
Nothing about H is derived; instead every property the construction
relies on is checked here:

  * the degree of H over K equals the number of rational points,
  * (alpha, beta) lies on the curve over H,
  * V - frob(V) = (theta, eta) under the group law,
  * the Galois images are roots of the minimal polynomial and form a
    closed group of the right order,
  * the Artin element of each degree-1 prime translates V by -P.
"""

from __future__ import annotations

from .curve import Curve, Point, PrimeDeg1, point_sub
from .errors import (
    ArtinAmbiguous,
    ArtinNotFound,
    GaloisTableInvalid,
    VEquationFailed,
    WrongClassFieldDegree,
)
from .hfield import HElem, HField
from .kfield import KField
from .funcfield import HPoint, xi_point


class TowerSpec:
    """Raw configured data describing H/K; validated by tower_load.

    minpoly_coeffs, galois_images, alpha and beta are callables that
    receive the freshly built KField / HField and return elements;
    this keeps the spec independent of construction order.  root_hints
    maps generator names to (power, branch leading coefficient) pairs
    used when embedding into the Laurent field.
    """

    def __init__(self, minpoly, galois_images, alpha, beta, root_hints=None):
        self.minpoly = minpoly
        self.galois_images = galois_images
        self.alpha = alpha
        self.beta = beta
        self.root_hints = root_hints or {}


class Tower:
    """Validated tower: base field, class field, V, and Galois data."""

    def __init__(self, curve: Curve, K: KField, H: HField, V: HPoint, spec: TowerSpec):
        self.curve = curve
        self.K = K
        self.H = H
        self.V = V
        self.spec = spec
        self.h = H.h

    def lift(self, c) -> HElem:
        """Coerce a base-field constant into H."""
        return self.H.scalar(int(c.coords[0]))

    def point_to_h(self, P: Point) -> HPoint:
        """Lift a point with F_q coordinates into H."""
        return HPoint(
            self.H,
            self.lift(P.x),
            self.lift(P.y),
            check=False,
        )

    def galois_orbit(self, x: HElem) -> list[HElem]:
        return [self.H.galois_apply(x, k) for k in range(self.h)]


def tower_load(spec: TowerSpec, curve: Curve) -> Tower:
    K = KField(curve)
    minpoly = spec.minpoly(K)
    h = len(minpoly) - 1
    n_points = len(curve.rational_points())
    if h != n_points:
        raise WrongClassFieldDegree(
            f"minimal polynomial has degree {h}, but the curve has "
            f"{n_points} rational points"
        )
    H = HField(K, minpoly)

    images = spec.galois_images(H)
    try:
        H.set_galois(images)
    except ValueError as exc:
        raise GaloisTableInvalid(str(exc)) from None
    _check_galois_group(H, images)

    alpha = spec.alpha(H)
    beta = spec.beta(H)
    V = HPoint(H, alpha, beta, check=False)
    if not V.on_curve():
        raise VEquationFailed("(alpha, beta) does not lie on the curve over H")

    # V - frob(V) must be exactly (theta, eta)
    def clift(c):
        return H.scalar(int(c.coords[0]))

    Vp = Point(V.x, V.y)
    diff = point_sub(curve, Vp, Vp.frob(1), clift)
    Xi = xi_point(H)
    if diff.inf or not (diff.x == Xi.x and diff.y == Xi.y):
        raise VEquationFailed("V - frob(V) is not the point (theta, eta)")
    return Tower(curve, K, H, V, spec)


def _check_galois_group(H: HField, images: list[HElem]) -> None:
    """Closure and order of the configured automorphism list."""
    h = H.h
    seen = []
    for g in images:
        if any(g == s for s in seen):
            raise GaloisTableInvalid("repeated Galois image")
        seen.append(g)
    for i in range(h):
        for j in range(h):
            # composition: apply automorphism i to the image of u under j
            comp = H.galois_apply(images[j], i)
            if not any(comp == g for g in images):
                raise GaloisTableInvalid("Galois images are not closed")


def artin_sigma(tower: Tower, prime: PrimeDeg1) -> int:
    """Index of the Galois element sending V to V - P."""
    H = tower.H
    curve = tower.curve
    P = prime.point
    if P.inf:
        return 0
    Vp = Point(tower.V.x, tower.V.y)
    target = point_sub(
        curve, Vp, Point(tower.lift(P.x), tower.lift(P.y)), tower.lift
    )
    found = []
    for k in range(tower.h):
        ga = H.galois_apply(tower.V.x, k)
        gb = H.galois_apply(tower.V.y, k)
        if ga == target.x and gb == target.y:
            found.append(k)
    if not found:
        raise ArtinNotFound("no Galois element realizes V - P")
    if len(found) > 1:
        raise ArtinAmbiguous("multiple Galois elements realize V - P")
    return found[0]
