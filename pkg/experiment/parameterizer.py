import os
from typing import *

import pandas as pd

from experiment.experiment import Experiment
from graphing import Grapher
from utils import HiddenPrints, compact_dict_print, save_pandas_table
from utils.config import results_dir


class Parameterizer:
    """
    Runs an experiment with different knobs, typically a sweep over the ball level L and the precision N. All
    generated data of the sweep is stored in the 'parameterization' directory under the results root.
    """

    def __init__(self, parameter_function: Callable[[Dict[str, int]], Experiment],
                 params: List[Dict[str, int]], name: str = None):
        """
        Initialization of the Parameterizer class
        :param parameter_function: Function that takes in a dictionary of knobs and returns a freshly defined
         experiment based on them
        :param params: List of dictionaries to apply on parameter_function
        :param name: name for storing purposes
        """
        self.parameter_function = parameter_function
        self.parameters = params
        root = os.path.join(results_dir(), 'parameterization')
        self.directory = os.path.join(root, f'params_{compact_dict_print({"runs": len(params)}) if name is None else name}')
        self.experiments: List[Experiment] = []

    def run(self, save_data: bool = True, save_graphs: bool = True, show_graphs: bool = False) -> pd.DataFrame:
        rows = []
        for param in self.parameters:
            print(f'Testing parameters {compact_dict_print(param)}')
            experiment = self.parameter_function(param)
            with HiddenPrints():
                table = experiment.run(save_data=save_data)
            self.experiments.append(experiment)
            pipe = experiment.get_pipeline()
            rows.append({
                **param,
                'L': pipe.L,
                'N': pipe.N,
                'certified': pipe.xi.precision,
                'winding': pipe.winding,
                'xi_found': pipe.xi_residue is not None,
                'passed': bool(table['passed'].all()),
            })
        results = pd.DataFrame(rows)
        results['consistent'] = self.consistent_digits()
        if save_data:
            os.makedirs(self.directory, exist_ok=True)
            save_pandas_table(os.path.join(self.directory, 'sweep'), results)
        if save_graphs or show_graphs:
            self.generate_graphs(results, save_graphs, show_graphs)
        return results

    def consistent_digits(self) -> List[bool]:
        """
        Whether each run reproduces the digits of q(c) and I_psi certified by every other run of the sweep
        """
        pipes = [e.get_pipeline() for e in self.experiments]
        out = []
        for pipe in pipes:
            ok = True
            for other in pipes:
                for attr in ('teitelbaum_unit', 'period'):
                    a, b = getattr(pipe, attr), getattr(other, attr)
                    digits = min(a.precision, b.precision, a.value.precision, b.value.precision)
                    ok = ok and a.value.agrees_with(b.value, digits)
            out.append(ok)
        return out

    def generate_graphs(self, results: pd.DataFrame, save_graphs: bool = True, show_graphs: bool = False):
        """
        Certified digits against each knob that was varied
        """
        os.makedirs(self.directory, exist_ok=True)
        grapher = Grapher(self.directory, show_graphs, save_graphs)
        for key in ('L', 'N'):
            if results[key].nunique() > 1:
                ordered = results.sort_values(key)
                grapher.line_2d(f'/graph_{key}', ordered[key], ordered['certified'], key, 'certified digits')
