"""Self-homeomorphisms of the ambient models, represented piecewise.

A map is a family of region-restricted invertible pieces plus the identity
on the complement.  Composites, inverses and level reparameterizations along
a chart are the building blocks used by every construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence

from .pl import PLHomeo, pl_eval, pl_invert


class Homeo:
    ambient = None
    provenance: tuple = ()

    def __call__(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def support(self, x) -> bool:
        """Declared support: False guarantees the map fixes x."""
        return True

    def inverse(self) -> "Homeo":
        return InverseHomeo(self)

    def then(self, other: "Homeo") -> "Homeo":
        """other o self."""
        return compose(self, other)


def homeo_eval(h: Homeo, x):
    return h(x)


def homeo_inv_eval(h: Homeo, x):
    return h.inv(x)


class IdentityHomeo(Homeo):
    def __init__(self, ambient=None, provenance=("identity",)):
        self.ambient = ambient
        self.provenance = tuple(provenance)

    def __call__(self, x):
        return x

    def inv(self, x):
        return x

    def support(self, x):
        return False

    def __repr__(self):
        return "IdentityHomeo()"


class InverseHomeo(Homeo):
    def __init__(self, h: Homeo):
        self.h = h
        self.ambient = h.ambient
        self.provenance = h.provenance

    def __call__(self, x):
        return self.h.inv(x)

    def inv(self, x):
        return self.h(x)

    def support(self, x):
        return self.h.support(x)

    def inverse(self):
        return self.h

    def __repr__(self):
        return f"InverseHomeo({self.h!r})"


class CompositeHomeo(Homeo):
    """Apply ``maps`` in order: maps[-1] o ... o maps[0]."""

    def __init__(self, maps: Sequence[Homeo], provenance=()):
        self.maps = tuple(maps)
        self.ambient = next((m.ambient for m in self.maps if m.ambient is not None), None)
        prov = list(provenance)
        for m in self.maps:
            for p in m.provenance:
                if p not in prov:
                    prov.append(p)
        self.provenance = tuple(prov)

    def __call__(self, x):
        for m in self.maps:
            x = m(x)
        return x

    def inv(self, x):
        for m in reversed(self.maps):
            x = m.inv(x)
        return x

    def support(self, x):
        return any(m.support(x) for m in self.maps)

    def __repr__(self):
        return f"CompositeHomeo({len(self.maps)} maps)"


def compose(*maps: Homeo, provenance=()) -> Homeo:
    """compose(f, g, h) applies f first, then g, then h.  Identities are dropped."""
    flat: List[Homeo] = []
    for m in maps:
        if isinstance(m, CompositeHomeo):
            flat.extend(m.maps)
        elif not isinstance(m, IdentityHomeo):
            flat.append(m)
    amb = next((m.ambient for m in maps if m.ambient is not None), None)
    if not flat:
        return IdentityHomeo(amb)
    if len(flat) == 1 and not provenance:
        return flat[0]
    return CompositeHomeo(flat, provenance)


@dataclass(frozen=True)
class Piece:
    """One constituent: an invertible map between a domain region and an image region."""

    name: str
    domain: Callable[[object], bool]
    forward: Callable[[object], object]
    image: Callable[[object], bool]
    backward: Callable[[object], object]


class PiecewiseHomeo(Homeo):
    """Pieces tried in order; points in no piece's domain are fixed.

    Subclasses may materialize pieces lazily by overriding ``pieces_at`` and
    ``pieces_onto``, which return only the pieces that can contain x.
    """

    def __init__(self, ambient, pieces: Iterable[Piece] = (), support=None, provenance=()):
        self.ambient = ambient
        self.pieces = tuple(pieces)
        self._support = support
        self.provenance = tuple(provenance)

    def pieces_at(self, x):
        return self.pieces

    def pieces_onto(self, x):
        return self.pieces

    def __call__(self, x):
        for p in self.pieces_at(x):
            if p.domain(x):
                return p.forward(x)
        return x

    def inv(self, x):
        for p in self.pieces_onto(x):
            if p.image(x):
                return p.backward(x)
        return x

    def support(self, x):
        if self._support is None:
            return True
        return self._support(x)


class LevelReparam(Homeo):
    """phi(y, t) -> phi(y, theta_y(t)) on the chart image, identity elsewhere.

    ``theta`` is either one PLHomeo of (0, INF] fixing INF, or a function of
    the base point returning one.
    """

    def __init__(self, chart, theta, support_levels=None, provenance=()):
        self.chart = chart
        self.ambient = chart.ambient
        self._theta = theta
        self._support_levels = support_levels  # (lo, hi): moved points have levels in (lo, hi)
        self.provenance = tuple(provenance)

    def theta(self, y) -> PLHomeo:
        return self._theta if isinstance(self._theta, PLHomeo) else self._theta(y)

    def _apply(self, x, backward: bool):
        loc = self.chart.locate(x)
        if loc.kind != "interior":
            return x
        if self._support_levels is not None:
            lo, hi = self._support_levels
            if not (lo < loc.t < hi):
                return x
        f = self.theta(loc.y)
        if backward:
            f = pl_invert(f)
        s = pl_eval(f, loc.t)
        if s == loc.t:
            return x
        return self.chart.eval(loc.y, s)

    def __call__(self, x):
        return self._apply(x, False)

    def inv(self, x):
        return self._apply(x, True)

    def support(self, x):
        loc = self.chart.locate(x)
        if loc.kind == "outside":
            return False
        if loc.kind == "vertex":
            return False
        if self._support_levels is not None:
            lo, hi = self._support_levels
            return lo < loc.t < hi
        return True


class TransportedHomeo(Homeo):
    """A compactly supported homeomorphism of the plane carried into a suspension patch."""

    def __init__(self, planar: Homeo, patch):
        self.planar = planar
        self.patch = patch
        self.ambient = patch.susp
        self.provenance = planar.provenance

    def __call__(self, x):
        if not self.patch.covers(x):
            return x
        return self.patch.from_plane(self.planar(self.patch.to_plane(x)))

    def inv(self, x):
        if not self.patch.covers(x):
            return x
        return self.patch.from_plane(self.planar.inv(self.patch.to_plane(x)))

    def support(self, x):
        return self.patch.covers(x) and self.planar.support(self.patch.to_plane(x))


class FunctionHomeo(Homeo):
    """Wraps a pair of plain functions; used for fixtures and mutation tests."""

    def __init__(self, forward, backward, ambient=None, support=None, provenance=()):
        self._f, self._b = forward, backward
        self.ambient = ambient
        self._support = support
        self.provenance = tuple(provenance)

    def __call__(self, x):
        return self._f(x)

    def inv(self, x):
        return self._b(x)

    def support(self, x):
        return True if self._support is None else self._support(x)
