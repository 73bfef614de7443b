"""Etale double covers of elliptic curves through rational 2-isogenies.

Given E: y^2 = x^3 + a*x + b and a rational 2-torsion point T = (x0, 0),
the quotient isogeny E -> E/<T> is computed by the classical degree-2
formulas after translating T to the origin, and the cover returned is the
dual isogeny pi: E' -> E.  A separable degree-2 isogeny is unramified
everywhere, so pi is an etale double cover with deck transformation
"translation by the nontrivial kernel point T'".

Characteristic 3 is excluded: the quotient curve cannot be renormalized to
a short Weierstrass model there (completing the cube divides by 3), and the
curve container only carries short models.  Characteristic 2 is excluded by
the operation's contract.
"""

from __future__ import annotations

from .curves import Curve, Divisor, Place
from .errors import EvenCharacteristic, NotTwoTorsion, UnsupportedCurve
from .fields import embedding, poly_roots
from .picard import characters, ell_add, picard_group


def two_torsion_points(curve: Curve) -> list:
    """Rational 2-torsion points (x0, 0) of a short Weierstrass curve."""
    if curve.kind != "elliptic":
        raise UnsupportedCurve("2-torsion enumeration needs a short Weierstrass curve")
    return [(r, 0) for r in poly_roots(curve.f)]


def make_etale_double_cover(base: Curve, torsion: tuple) -> "EtaleDoubleCover":
    """Construct the cover attached to a rational 2-torsion point of the base."""
    return EtaleDoubleCover(base, torsion)


class EtaleDoubleCover:
    """pi: E' -> E of degree 2, with the deck involution and kernel data."""

    def __init__(self, base: Curve, torsion: tuple):
        if base.kind != "elliptic":
            raise UnsupportedCurve("covers are built over short Weierstrass curves")
        F = base.field
        if F.p == 2:
            raise EvenCharacteristic("etale double covers need odd characteristic")
        if F.p == 3:
            raise UnsupportedCurve(
                "characteristic 3 quotients leave the short Weierstrass family"
            )
        if torsion is None or len(torsion) != 2 or torsion[1] != 0:
            raise NotTwoTorsion(f"{torsion!r} is not a nontrivial 2-torsion point")
        x0, _ = torsion
        if base.f(x0) != 0:
            raise NotTwoTorsion(f"{torsion!r} does not lie on the curve")
        self.base = base
        self.torsion = torsion
        # translated model y^2 = x^3 + A x^2 + B x with the kernel at x = 0
        A = F.mul(3 % F.p, x0)
        B = F.add(F.mul(3 % F.p, F.mul(x0, x0)), base.a)
        if B == 0:
            # then (0,0) of the translated model is a singular quotient datum
            raise NotTwoTorsion("torsion point generates a non-cyclic kernel datum")
        self.A, self.B = A, B
        # quotient y^2 = x^3 - 2A x^2 + (A^2 - 4B) x, recentered to short form
        A2 = F.neg(F.add(A, A))
        B2 = F.sub(F.mul(A, A), F.mul(4 % F.p, B))
        shift2 = F.div(F.neg(A2), 3 % F.p)  # x -> x + shift2 kills the x^2 term
        # expand (x + s)^3 + A2 (x + s)^2 + B2 (x + s)
        s = shift2
        a_new = F.add(
            F.add(F.mul(3 % F.p, F.mul(s, s)), F.mul(F.add(A2, A2), s)), B2
        )
        b_new = F.add(
            F.add(F.mul(s, F.mul(s, s)), F.mul(A2, F.mul(s, s))), F.mul(B2, s)
        )
        self.cover = Curve("elliptic", F, a=a_new, b=b_new)
        self._recentre = s  # cover (short) x  ->  quotient-model x = X + s
        self.deck_point = (F.neg(s), 0)  # the nontrivial kernel point of pi
        assert self.cover.f(self.deck_point[0]) == 0
        self._check_isogenous()

    # -- point maps ---------------------------------------------------------

    def push_point(self, n: int, pt):
        """pi on points over F_{q^n} (None is the origin)."""
        if pt is None:
            return None
        ext, emb = self.base.ext_field(n)
        s = emb(self._recentre)
        A, B = emb(self.A), emb(self.B)
        x1 = ext.add(pt[0], s)
        y1 = pt[1]
        if x1 == 0:
            return None  # kernel of the dual isogeny
        disc = ext.sub(ext.mul(A, A), ext.mul(4 % ext.p, B))
        xs = ext.div(
            ext.mul(y1, y1), ext.mul(4 % ext.p, ext.mul(x1, x1))
        )
        ys = ext.div(
            ext.mul(y1, ext.sub(ext.mul(x1, x1), disc)),
            ext.mul(8 % ext.p, ext.mul(x1, x1)),
        )
        # back from the translated base model to the short model
        x0 = emb(self.torsion[0])
        return (ext.add(xs, x0), ys)

    def pull_isogeny_point(self, n: int, pt):
        """The dual direction E -> E' on points (the pullback on Pic^0)."""
        if pt is None:
            return None
        ext, emb = self.base.ext_field(n)
        x0 = emb(self.torsion[0])
        xt = ext.sub(pt[0], x0)
        yt = pt[1]
        if xt == 0:
            return None  # the kernel <T> of the quotient isogeny
        B = emb(self.B)
        xq = ext.div(ext.mul(yt, yt), ext.mul(xt, xt))
        yq = ext.div(
            ext.mul(yt, ext.sub(ext.mul(xt, xt), B)), ext.mul(xt, xt)
        )
        s = emb(self._recentre)
        return (ext.sub(xq, s), yq)

    def involution_point(self, n: int, pt):
        """Translation by the deck point on E' over F_{q^n}."""
        ext, emb = self.cover.ext_field(n)
        tp = (emb(self.deck_point[0]), emb(self.deck_point[1]))
        return ell_add(self.cover, ext, emb, pt, tp)

    def preimages(self, n: int, pt) -> list:
        """Points of E' over F_{q^n} mapping to pt (may be empty if inert)."""
        if pt is None:
            ext, emb = self.cover.ext_field(n)
            return [None, (emb(self.deck_point[0]), emb(self.deck_point[1]))]
        ext, emb = self.base.ext_field(n)
        A, B = emb(self.A), emb(self.B)
        x0 = emb(self.torsion[0])
        s = ext.sub(pt[0], x0)
        # x1 solves x1^2 - (2A + 4s) x1 + (A^2 - 4B) = 0
        bq = ext.add(ext.add(A, A), ext.mul(4 % ext.p, s))
        cq = ext.sub(ext.mul(A, A), ext.mul(4 % ext.p, B))
        disc = ext.sub(ext.mul(bq, bq), ext.mul(4 % ext.p, cq))
        r = ext.sqrt(disc)
        if r is None:
            return []
        out = []
        inv2 = ext.inv(2 % ext.p)
        recentre = emb(self._recentre)
        for root in {ext.mul(ext.add(bq, r), inv2), ext.mul(ext.sub(bq, r), inv2)}:
            v = self._quotient_rhs(ext, root)
            ys = ext.sqrt(v) if v else 0
            if v and ys is None:
                continue
            for y1 in {ys, ext.neg(ys)}:
                cand = (ext.sub(root, recentre), y1)
                if self.push_point(n, cand) == pt:
                    out.append(cand)
        return sorted(set(out))

    def _quotient_rhs(self, ext, x1):
        emb = self.base.ext_field(ext.k // self.base.field.k)[1]
        A, B = emb(self.A), emb(self.B)
        A2 = ext.neg(ext.add(A, A))
        B2 = ext.sub(ext.mul(A, A), ext.mul(4 % ext.p, B))
        return ext.mul(x1, ext.add(ext.mul(x1, ext.add(x1, A2)), B2))

    # -- construction checks -----------------------------------------------

    def _check_isogenous(self):
        from .curves import point_count

        for n in (1, 2):
            assert point_count(self.base, n) == point_count(self.cover, n), (
                "quotient curve has mismatched point counts"
            )
        # pi really lands on the base curve, 2-to-1 with a free deck action
        for n in (1, 2):
            ext, emb = self.cover.ext_field(n)
            fb = self.base.f.map_coeffs(ext, embedding(self.base.field, ext))
            for pt in self.cover.affine_points(n):
                img = self.push_point(n, pt)
                if img is not None:
                    x, y = img
                    assert ext.mul(y, y) == fb(x)
                tw = self.involution_point(n, pt)
                assert tw != pt
                assert self.push_point(n, tw) == img

    # -- divisor functoriality ------------------------------------------------

    def place_below(self, place: Place) -> tuple[Place, int]:
        """(image place of pi, residue degree f) for a place of the cover."""
        if place.is_infinite():
            return Place.at_infinity(self.base), 1
        n = place.degree
        img = self.push_point(n, place.point())
        if img is None:  # the rational deck point sits over the origin
            return Place.at_infinity(self.base), 1
        below = Place.from_point(self.base, n, img)
        return below, n // below.degree

    def places_above(self, place: Place) -> list[Place]:
        """The one or two places of pi^{-1} of a place of the base."""
        n = place.degree
        if place.is_infinite():
            deck = Place.from_point(self.cover, 1, self.deck_point)
            return sorted([Place.at_infinity(self.cover), deck], key=lambda p: p.sort_key())
        pts = self.preimages(n, place.point())
        if pts:
            out = {Place.from_point(self.cover, n, pt) for pt in pts}
            assert len(out) == 2
            return sorted(out, key=lambda p: p.sort_key())
        up = self.base.tower_embedding(n, 2 * n)
        lifted = (up(place.point()[0]), up(place.point()[1]))
        pts2 = self.preimages(2 * n, lifted)
        assert pts2, "every place has preimages over the quadratic extension"
        out = {Place.from_point(self.cover, 2 * n, pt) for pt in pts2}
        assert len(out) == 1
        return list(out)

    def pushforward_divisor(self, D: Divisor) -> Divisor:
        assert D.curve == self.cover
        acc = Divisor.zero(self.base)
        for place, m in D.items():
            below, f = self.place_below(place)
            acc = acc + Divisor(self.base, {below: m * f})
        return acc

    def pullback_divisor(self, D: Divisor) -> Divisor:
        assert D.curve == self.base
        acc = Divisor.zero(self.cover)
        for place, m in D.items():
            for above in self.places_above(place):
                acc = acc + Divisor(self.cover, {above: m})
        return acc

    def apply_involution(self, D: Divisor) -> Divisor:
        assert D.curve == self.cover
        acc: dict = {}
        for place, m in D.items():
            if place.is_infinite():
                newp = Place.from_point(self.cover, 1, self.deck_point)
            else:
                n = place.degree
                pt = self.involution_point(n, place.point())
                newp = Place.at_infinity(self.cover) if pt is None else Place.from_point(
                    self.cover, n, pt
                )
            acc[newp] = acc.get(newp, 0) + m
        return Divisor(self.cover, acc)

    # -- class-group homomorphisms ---------------------------------------------

    def norm_class(self, el):
        """Pushforward Pic^0(E') -> Pic^0(E) (the isogeny pi on points)."""
        return self.push_point(1, el)

    def pullback_class(self, el):
        """Pullback Pic^0(E) -> Pic^0(E') (the dual isogeny on points)."""
        return self.pull_isogeny_point(1, el)

    def cover_character(self):
        """The order-2 character of Pic(E) cut out by the cover.

        It kills exactly the norms from the cover on Pic^0 and has degree
        value 0; a place is split exactly when the character vanishes on it.
        """
        pic = picard_group(self.base)
        image = {self.norm_class(el) for el in picard_group(self.cover).elements()}
        for chi in characters(pic, 1):
            if chi.is_trivial_on_pic0():
                continue
            if all(chi.value_of_class(el) == 0 for el in image) and chi.order_on_pic0() == 2:
                return chi
        raise AssertionError("no cover character found")
