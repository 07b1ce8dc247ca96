"""Assembly of the JSON report, one section per pipeline stage."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Optional

from coxred import exact, finred, homology, torsion
from coxred.coxdiagram import CoxeterDiagram, euler_characteristic, gram_matrix
from coxred.errors import CapExceeded, CoxredError
from coxred.groupengine import enumerate_group, lifted_order
from coxred.numberfield import PrimeIdealData, format_multiquad, splitting
from coxred.vinberg import VinbergLattice, build_lattice, lattice_summary

# Gauss-Bonnet in dimension 4: vol = chi * 4 pi^2 / 3
GAUSS_BONNET_DIM = 4


def fraction_text(x: Fraction, denominator: Optional[int] = None) -> str:
    """``num/den``; with ``denominator`` the fraction is written over it when
    that is exact (e.g. an Euler characteristic over a subgroup index)."""
    if denominator and (x * denominator).denominator == 1:
        return f"{x * denominator}/{denominator}"
    return f"{x.numerator}/{x.denominator}"


def load_schema() -> dict:
    return json.loads(resources.files("coxred").joinpath("report.schema.json").read_text())


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


class ReportBuilder:
    """Computes pipeline stages lazily and records each one in ``report``."""

    def __init__(self, d: CoxeterDiagram, prime: Optional[int] = None, cap: int = 10 ** 6,
                 davis: bool = False):
        self.d = d
        self.prime = prime
        self.cap = cap
        self.davis = davis
        self.report: dict = {"diagram": d.text()}
        self._lattice = None
        self._P = None
        self._rep = None
        self._image_order = None
        self._torsion = None

    # -- stages -------------------------------------------------------------

    def gram(self):
        g = gram_matrix(self.d)
        self.report["gram"] = [[format_multiquad(x) for x in row] for row in g]
        self.report["signature"] = list(exact.signature(g))

    def lattice(self) -> VinbergLattice:
        if self._lattice is None:
            self.gram()
            lat = build_lattice(self.d)
            self._lattice = lat
            self.report["field"] = {"D": lat.D}
            self.report["lattice"] = lattice_summary(lat)
            self.report["signature"] = list(lat.signature)
        return self._lattice

    def prime_ideal(self) -> PrimeIdealData:
        if self._P is None:
            lat = self.lattice()
            if self.prime is None:
                from coxred.errors import InputError

                raise InputError("this subcommand needs --prime")
            self._P = splitting(self.prime, lat.D)
            self.report["prime"] = self._P.to_dict()
        return self._P

    def reduction(self) -> finred.FiniteRepresentation:
        if self._rep is not None:
            return self._rep
        lat, P = self.lattice(), self.prime_ideal()
        frame = "basis"
        rep = finred.reduce(lat, P)
        if lat.e_frame() is not None:
            try:
                rep = finred.e_frame_representation(lat, P)
                frame = "e"
            except CoxredError:
                pass
        self._rep = rep
        q = rep.quotient
        section = {
            "frame": frame,
            "dim": rep.dim,
            "radical_dim": len(rep.radical_basis),
            "radical": [[x.code for x in v] for v in rep.radical_basis],
            "form": [[x.code for x in row] for row in rep.form],
            "form_text": finred.form_text(rep.form),
            "quotient_dim": q.dim,
            "form_class": None,
            "classical_order": None,
            "image_order": None,
            "image_order_capped": False,
        }
        if rep.field.p != 2 and q.dim > 0:
            cls = finred.classify_form(q.form, rep.field)
            section["form_class"] = cls.to_dict()
            section["classical_order"] = finred.orthogonal_group_order(q.dim, rep.field.q, cls.epsilon)
        section["full_image_order"] = None
        try:
            quotient_order, kernel_order = self.image_orders()
            self._image_order = quotient_order
            section["image_order"] = quotient_order
            section["full_image_order"] = quotient_order * kernel_order
        except CapExceeded:
            section["image_order_capped"] = True
        self.report["reduction"] = section
        return rep

    def image_orders(self) -> tuple[int, int]:
        """Order of the image acting on the regular quotient W, and of the
        kernel from the image on the full reduction onto it."""
        rep = self._rep
        quotient = finred.to_prime_field_arrays(rep.field, rep.quotient.generators)
        if not rep.radical_basis:
            return enumerate_group(quotient, rep.field.p, cap=self.cap).order, 1
        full = finred.to_prime_field_arrays(rep.field, rep.generators)
        return lifted_order(quotient, full, rep.field.p, cap=self.cap)

    def torsion(self) -> torsion.TorsionVerdict:
        if self._torsion is None:
            rep = self.reduction()
            self._torsion = torsion.check_torsion_free(self.d, rep, self._P)
            self.report["torsion"] = self._torsion.to_dict()
        return self._torsion

    def invariants(self):
        chi = euler_characteristic(self.d)
        section = {"euler_char": fraction_text(chi), "manifold_euler": None, "volume_factor": None}
        if self.prime is not None:
            self.reduction()
            if self._image_order is None:
                raise CapExceeded(f"image order exceeds cap {self.cap}; manifold invariants unavailable")
            verdict = self.torsion()
            if verdict.verdict != "has_torsion":
                section["euler_char"] = fraction_text(chi, self._image_order)
                m = chi * self._image_order
                section["manifold_euler"] = fraction_text(m) if m.denominator != 1 else m.numerator
                if self.lattice().dim == GAUSS_BONNET_DIM + 1 and m.denominator == 1:
                    section["volume_factor"] = m.numerator
        self.report["invariants"] = section

    def homology(self):
        rep = self.reduction()
        res = homology.kernel_homology(self.d, rep, davis=self.davis)
        self.report["homology"] = res.to_dict()
