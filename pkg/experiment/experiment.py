"""Experiment

A builder for verification runs: pick a curve, the knobs (L, N), and the checks to evaluate, then run. Every check is
exact or certified to the precision recorded with it.

This file can also be imported as a module and contains the following
functions and classes:

    * Experiment: the builder.
    * verify: run every check on one curve and return the report.
"""

import logging
import os
from typing import *

import pandas as pd
import sympy

from algebra import Place, RatFunc, format_poly
from cochains import (hecke, hecke_operator, u_operator, atkin_lehner, trace_map, twisted_trace, petersson,
                      polynomials_below)
from elliptic import EllipticCurve, load_curve
from experiment.compare import CheckResult, run
from experiment.pipeline import Pipeline
from experiment.report import VerificationReport, NOT_A_ROOT_OF_UNITY, format_residue
from integrals import check_mass, cover_mass_defect
from local import residue_field
from symbols import BoundaryMeasure, measure_table, oracle_mismatches
from utils import compact_dict_print, write_json
from utils.config import DEFAULT_PRECISION, DEFAULT_HECKE_DEGREE, DEFAULT_MEASURE_DEPTH, results_dir

logger = logging.getLogger(__name__)


def _place_key(Q: Place) -> str:
    return 'inf' if Q.is_infinite else format_poly(Q.pi)


class Experiment:
    """
    Creates a verification builder which can be used to run some specific checks on one curve.
    """

    def __init__(self, name: str = None):
        self.name = name
        self.reset(name)

    def reset(self, name: str = None):
        """
        Resets the experiment.
        :param name: name
        :return: self
        """
        self.curve: Optional[EllipticCurve] = None
        self.ball_level: Optional[int] = None
        self.precision: int = DEFAULT_PRECISION
        self.hecke_degree: int = DEFAULT_HECKE_DEGREE
        self.sign: int = 1
        self.progress: bool = False
        self.checks: Dict[str, Callable[[], CheckResult]] = {}
        self.results: List[pd.DataFrame] = []
        self.pipeline: Optional[Pipeline] = None
        self.name = name
        return self

    @property
    def directory(self) -> str:
        tag = compact_dict_print({'L': self.pipeline.L, 'N': self.pipeline.N}) if self.pipeline else ''
        return os.path.join(results_dir(), self.name or (self.curve.name if self.curve else 'curve'), tag)

    # CONFIGURATION

    def add_curve(self, curve: EllipticCurve):
        self.curve = curve
        if self.name is None:
            self.name = curve.name or None
        self.pipeline = None
        return self

    def add_fixture(self, name: str):
        """
        Load a curve fixture by path or by name in the fixture directory
        """
        return self.add_curve(load_curve(name))

    def set_ball_level(self, L: Optional[int]):
        self.ball_level = L
        self.pipeline = None
        return self

    def set_precision(self, N: int):
        self.precision = N
        self.pipeline = None
        return self

    def set_hecke_degree(self, degree: int):
        self.hecke_degree = degree
        self.pipeline = None
        return self

    def flip_sign(self):
        """
        Run with -c in place of the newform c
        """
        self.sign = -self.sign
        self.pipeline = None
        return self

    def show_progress(self, progress: bool = True):
        self.progress = progress
        return self

    def get_pipeline(self) -> Pipeline:
        assert self.curve is not None, "Add a curve before running the experiment"
        if self.pipeline is None:
            self.pipeline = Pipeline(self.curve, self.ball_level, self.precision, self.hecke_degree, self.sign,
                                     self.progress)
        return self.pipeline

    def add_custom_check(self, name: str, check: Callable[[Pipeline], CheckResult]):
        """
        Add a custom check to the experiment
        :param name: Name of the check
        :param check: function of the pipeline returning a CheckResult
        :return: self
        """
        self.checks[name] = lambda: check(self.get_pipeline())
        return self

    # CHECKS

    def add_all_checks(self):
        """
        Add every check except the raw period, whose quadratic-extension cover is the slowest stage
        :return: self
        """
        return self.add_reduction_check() \
            .add_harmonicity_check() \
            .add_eigenform_check() \
            .add_hecke_algebra_check() \
            .add_atkin_lehner_check() \
            .add_u_check() \
            .add_newness_check() \
            .add_mass_check() \
            .add_measure_oracle_check() \
            .add_flip_symmetry_check() \
            .add_valuation_check() \
            .add_identity_check() \
            .add_period_check()

    def add_reduction_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            m_p, m_inf = pipe.m_p, pipe.m_inf
            return CheckResult(m_p > 0 and m_inf > 0 and pipe.tate.m == m_p,
                               f'm_p={m_p}, m_inf={m_inf}, v(q_E)={pipe.tate.m}')
        return self.add_custom_check('split_reduction', check)

    def add_harmonicity_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            c = pipe.newform
            return CheckResult(c.is_harmonic() and c.is_cuspidal() and len(pipe.basis) == pipe.graph.cycle_rank(),
                               f'dim={len(pipe.basis)}, cycle rank={pipe.graph.cycle_rank()}')
        return self.add_custom_check('harmonic_cuspidal', check)

    def add_eigenform_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            c = pipe.newform
            bad = [_place_key(Q) for Q, a in pipe.eigenvalues.items() if hecke_operator(Q, c) != c * a]
            return CheckResult(not bad, f'{len(pipe.eigenvalues)} places' + (f', mismatch at {bad}' if bad else ''))
        return self.add_custom_check('hecke_eigenform', check)

    def add_hecke_algebra_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            places = list(pipe.eigenvalues)
            matrices = [hecke(Q, pipe.graph).on_basis(pipe.basis) for Q in places]
            commute = all(A * B == B * A for A in matrices for B in matrices)
            gram = sympy.Matrix([[petersson(x, y) for y in pipe.basis] for x in pipe.basis])
            adjoint = all(A.T * gram == gram * A for A in matrices)
            return CheckResult(commute and adjoint, f'commute={commute}, self-adjoint={adjoint}')
        return self.add_custom_check('hecke_algebra', check)

    def add_atkin_lehner_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            c = pipe.newform
            return CheckResult(atkin_lehner(pipe.p, c) == -c, 'W_p c = -c')
        return self.add_custom_check('atkin_lehner', check)

    def add_u_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            c = pipe.newform
            return CheckResult(u_operator(pipe.p, c) == c, 'U_p c = c')
        return self.add_custom_check('u_eigenvalue', check)

    def add_newness_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            below = pipe.level_below
            if below is None:
                return CheckResult(True, 'level p: no cusp forms at level 1')
            c = pipe.newform
            first, second = trace_map(c, below), twisted_trace(c, below, pipe.p)
            return CheckResult(first.is_zero() and second.is_zero(),
                               f'Tr c zero={first.is_zero()}, Tr W_p c zero={second.is_zero()}')
        return self.add_custom_check('p_new', check)

    def add_mass_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            zero = RatFunc.of(0, pipe.curve.q)
            axis = BoundaryMeasure.axis(pipe.ctx, None, zero)
            measures = [BoundaryMeasure.teitelbaum(pipe.ctx), axis]
            for measure in measures:
                check_mass(measure)
            defects = [measure.refinement_defect(a, k) for measure in measures
                       for k in range(DEFAULT_MEASURE_DEPTH + 1)
                       for a in polynomials_below(k * pipe.p.degree, pipe.curve.q)]
            covers = [cover_mass_defect(axis, L) for L in range(1, DEFAULT_MEASURE_DEPTH + 1)]
            return CheckResult(not any(defects) and not any(covers),
                               f'total mass zero, finitely additive, cover masses {covers}')
        return self.add_custom_check('mass_zero', check)

    def add_measure_oracle_check(self, depth: int = DEFAULT_MEASURE_DEPTH):
        def check(pipe: Pipeline) -> CheckResult:
            table = measure_table(pipe.ctx, depth)
            bad = oracle_mismatches(table)
            return CheckResult(bad.empty, f'{len(table)} balls of level <= {depth}, {len(bad)} mismatches')
        return self.add_custom_check('measure_oracle', check)

    def add_flip_symmetry_check(self, depth: int = DEFAULT_MEASURE_DEPTH):
        def check(pipe: Pipeline) -> CheckResult:
            table = measure_table(pipe.ctx, depth)
            bad = table[table['mu_inf_0'] != table['mu_inf_0_neg']]
            return CheckResult(bad.empty, f'mu{{inf->0}}(a) = mu{{inf->0}}(-a), {len(bad)} mismatches')
        return self.add_custom_check('flip_symmetry', check)

    def add_valuation_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            v = pipe.period.value.valuation
            return CheckResult(v == pipe.winding, f'v(I_psi)={v}, W={pipe.winding}')
        return self.add_custom_check('period_valuation', check)

    def add_identity_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            r = pipe.xi_residue
            return CheckResult(r is not None, f'xi={format_residue(r)} to relative precision {pipe.xi.precision}')
        return self.add_custom_check('exceptional_zero', check)

    def add_period_check(self):
        def check(pipe: Pipeline) -> CheckResult:
            zeta, quotient = pipe.zeta
            if zeta is None:
                return CheckResult(False, f"I_psi / q_E power is {NOT_A_ROOT_OF_UNITY}")
            # zeta^m_p must be xi when m_p | W; otherwise the quotient is xi itself
            k = pipe.m_p if pipe.winding % pipe.m_p == 0 else 1
            field = residue_field(pipe.p)
            compatible = pipe.xi_residue is not None and field.power(zeta, k) == pipe.xi_residue % field.modulus
            return CheckResult(compatible, f'zeta={format_residue(zeta)}, xi-compatible={compatible}')
        return self.add_custom_check('period_identity', check)

    def add_raw_period_check(self, ball_level: Optional[int] = None, precision: Optional[int] = None):
        """
        Compare the defining double integral for I_psi with the reduced product
        """
        def check(pipe: Pipeline) -> CheckResult:
            raw = pipe.raw_period(ball_level, precision)
            digits = min(raw.precision, pipe.period.precision)
            agrees = raw.value.agrees_with(raw.value.ext.element(pipe.period.value), digits)
            return CheckResult(agrees, f'raw and reduced agree to {digits} digits: {agrees}')
        return self.add_custom_check('raw_period', check)

    # RUN EXPERIMENT

    def run(self, save_data: bool = True) -> pd.DataFrame:
        """
        Runs the checks in order
        :param save_data: Boolean whether the check table and report should be stored
        :return: dataframe of check outcomes
        """
        pipeline = self.get_pipeline()
        print(f'Verifying {pipeline}')
        if save_data:
            os.makedirs(self.directory, exist_ok=True)
        df = run(self.checks, save_table=save_data, dir=self.directory)
        self.results.append(df)
        if save_data:
            self.report().write(os.path.join(self.directory, 'report.json'))
            write_json(os.path.join(self.directory, 'config.json'), self.config())
        return df

    def config(self) -> Dict[str, Any]:
        pipe = self.get_pipeline()
        return {'curve': str(self.curve), 'ball_level': pipe.L, 'precision': pipe.N,
                'hecke_degree': self.hecke_degree, 'sign': self.sign}

    def report(self) -> VerificationReport:
        assert self.results, "Run the experiment before asking for its report"
        pipe = self.get_pipeline()
        table = self.results[-1]
        zeta, _ = pipe.zeta
        return VerificationReport(
            curve=self.curve.name or str(self.curve),
            q=self.curve.q,
            level=format_poly(self.curve.level),
            p=format_poly(self.curve.p.pi),
            m_p=pipe.m_p,
            m_inf=pipe.m_inf,
            winding=pipe.winding,
            eigenvalues={_place_key(Q): a for Q, a in pipe.eigenvalues.items()},
            q_tilde=pipe.tate.q_tilde.to_json(),
            q_c=pipe.teitelbaum_unit.value.to_json(),
            i_psi=pipe.period.value.to_json(),
            ball_level=pipe.L,
            precision=pipe.N,
            certified_precision=pipe.xi.precision,
            xi=format_residue(pipe.xi_residue),
            zeta=format_residue(zeta),
            checks={name: bool(row['passed']) for name, row in table.iterrows()},
            details={name: str(row['detail']) for name, row in table.iterrows()},
        )


def verify(curve: Union[EllipticCurve, str], ball_level: Optional[int] = None, precision: int = DEFAULT_PRECISION,
           hecke_degree: int = DEFAULT_HECKE_DEGREE, raw: bool = False, save_data: bool = False,
           progress: bool = False) -> VerificationReport:
    """
    Verify the exceptional-zero identity and the period identity for one curve
    :param curve: curve or fixture name
    :param ball_level: L, by residue degree of p when omitted
    :param precision: N
    :param hecke_degree: degree bound of the eigenvalue table
    :param raw: also evaluate the raw double integral for I_psi
    :param save_data: store the check table and the report
    :param progress: show progress bars
    :return: report
    """
    experiment = Experiment()
    experiment = experiment.add_curve(curve) if isinstance(curve, EllipticCurve) else experiment.add_fixture(curve)
    experiment.set_ball_level(ball_level).set_precision(precision).set_hecke_degree(hecke_degree) \
        .show_progress(progress).add_all_checks()
    if raw:
        experiment.add_raw_period_check()
    experiment.run(save_data=save_data)
    return experiment.report()
