"""Pipeline

Every stage between a curve fixture and the exceptional-zero identity, computed on first use and kept:

    reductions -> quotient graph -> cuspidal basis -> newform c -> symbols and measures -> q(c), I_psi -> xi

This file can also be imported as a module and contains the following
functions and classes:

    * Pipeline: the lazily built stages for one curve and one choice of (L, N).
"""

import logging
from functools import cached_property
from typing import *

from algebra import Place, Poly
from cochains import HarmonicCochain, cuspidal_basis, newform_for_curve
from elliptic import EllipticCurve, Reduction, TatePeriod, validate_curve, frobenius_trace, tate_period
from integrals import IntegralResult, mult_integral_t, period_i_psi
from local import LocalElement, detect_root_of_unity
from quotient import QuotientGraph, build_quotient
from symbols import BoundaryMeasure, SymbolContext, winding_element
from utils.config import DEFAULT_PRECISION, DEFAULT_HECKE_DEGREE, default_ball_level

logger = logging.getLogger(__name__)


class Pipeline:
    """
    Stages of the verification of one curve
    """

    def __init__(self, curve: EllipticCurve, ball_level: Optional[int] = None, precision: int = DEFAULT_PRECISION,
                 hecke_degree: int = DEFAULT_HECKE_DEGREE, sign: int = 1, progress: bool = False):
        """
        :param curve: curve with declared level
        :param ball_level: ball level L of the integration covers, by residue degree of p when omitted
        :param precision: local precision N
        :param hecke_degree: good places up to this degree fix the newform
        :param sign: +1 or -1, multiplies the newform
        :param progress: show progress bars in the integration stage
        """
        if curve.p is None or curve.n is None:
            raise ValueError(f"{curve} carries no declared level")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.curve = curve
        self.p: Place = curve.p
        self.L = default_ball_level(self.p.degree) if ball_level is None else ball_level
        self.N = precision
        self.hecke_degree = hecke_degree
        self.sign = sign
        self.progress = progress

    @property
    def certified(self) -> int:
        return min(self.L, self.N)

    # CURVE

    @cached_property
    def reductions(self) -> Dict[Place, Reduction]:
        return validate_curve(self.curve)

    @property
    def m_p(self) -> int:
        return self.reductions[self.p].m

    @property
    def m_inf(self) -> int:
        return self.reductions[Place.infinity(self.curve.q)].m

    @cached_property
    def tate(self) -> TatePeriod:
        return tate_period(self.curve, self.p, self.N)

    # COCHAINS

    @cached_property
    def graph(self) -> QuotientGraph:
        return build_quotient(self.curve.level)

    @cached_property
    def basis(self) -> List[HarmonicCochain]:
        basis = cuspidal_basis(self.graph)
        logger.info(f"Cuspidal space at level {self.curve.level} has dimension {len(basis)}")
        return basis

    @cached_property
    def _newform(self) -> Tuple[HarmonicCochain, Dict[Place, int]]:
        return newform_for_curve(lambda Q: frobenius_trace(self.curve, Q), self.graph, self.hecke_degree,
                                 self.basis)

    @property
    def newform(self) -> HarmonicCochain:
        phi, _ = self._newform
        return phi if self.sign == 1 else -phi

    @property
    def eigenvalues(self) -> Dict[Place, int]:
        return self._newform[1]

    @cached_property
    def level_below(self) -> Optional[QuotientGraph]:
        """
        Quotient graph at level n, None when n is a unit
        """
        if self.curve.n.is_constant():
            return None
        return build_quotient(self.curve.n)

    # SYMBOLS

    @cached_property
    def ctx(self) -> SymbolContext:
        return SymbolContext(self.newform, self.p)

    @cached_property
    def winding(self) -> int:
        return winding_element(self.ctx)

    # INTEGRALS

    @cached_property
    def teitelbaum_unit(self) -> IntegralResult:
        """q(c), the integral of t over O_p^x against the Teitelbaum measure"""
        return mult_integral_t(BoundaryMeasure.teitelbaum(self.ctx), self.L, self.N, progress=self.progress)

    @cached_property
    def period(self) -> IntegralResult:
        return period_i_psi(self.ctx, self.L, self.N, mode='reduced', progress=self.progress)

    def raw_period(self, ball_level: Optional[int] = None, precision: Optional[int] = None) -> IntegralResult:
        return period_i_psi(self.ctx, ball_level or self.L, precision or self.N, mode='raw', progress=self.progress)

    @cached_property
    def xi(self) -> LocalElement:
        """
        q(c)^m_p * q_tilde^-W to the certified precision
        """
        value = self.teitelbaum_unit.value ** self.m_p * self.tate.q_tilde ** (-self.winding)
        return value.with_precision(min(self.certified, value.precision))

    @cached_property
    def xi_residue(self) -> Optional[Poly]:
        return detect_root_of_unity(self.xi)

    @cached_property
    def zeta(self) -> Tuple[Optional[Poly], LocalElement]:
        """
        The root of unity relating I_psi to a power of q_E, with the quotient it was read from:
        I_psi / q_E^(W / m_p) when m_p divides W, otherwise I_psi^m_p / q_E^W
        """
        value = self.period.value
        q_e = self.tate.q
        if self.winding % self.m_p == 0:
            quotient = value / q_e ** (self.winding // self.m_p)
        else:
            quotient = value ** self.m_p / q_e ** self.winding
        quotient = quotient.with_precision(min(self.certified, quotient.precision))
        return detect_root_of_unity(quotient), quotient

    def __repr__(self):
        return f'Pipeline({self.curve}, L={self.L}, N={self.N})'
