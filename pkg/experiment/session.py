import os
from typing import *

import pandas as pd
from tqdm import tqdm

from experiment.experiment import Experiment
from utils import HiddenPrints, save_pandas_table
from utils.config import results_dir


class Session:
    """
    Runs one experiment definition over several fixture curves and tabulates the check outcomes, one row per curve.
    Results are stored in the 'sessions' directory under the results root.
    """

    def __init__(self, experiment: Callable[[str], Experiment], fixtures: Sequence[str], name: str = None):
        """
        Initialization of the Session class
        :param experiment: A function that takes a fixture name and returns a freshly defined experiment
        :param fixtures: fixture names or paths
        :param name: Name of the session for directory storage
        """
        if name is None:
            name = str(self.__hash__())
        self.experiment_function = experiment
        self.fixtures = list(fixtures)
        self.directory = os.path.join(results_dir(), 'sessions', f'session_{name}')
        self.experiments: List[Experiment] = []

    def run(self, save_data: bool = True, quiet: bool = True) -> pd.DataFrame:
        rows = {}
        for fixture in tqdm(self.fixtures, desc='Curves'):
            experiment = self.experiment_function(fixture)
            if quiet:
                with HiddenPrints():
                    table = experiment.run(save_data=save_data)
            else:
                table = experiment.run(save_data=save_data)
            self.experiments.append(experiment)
            row = table['passed'].to_dict()
            row['passed'] = all(row.values())
            rows[experiment.name or fixture] = row
        results = pd.DataFrame.from_dict(rows, orient='index')
        if save_data:
            os.makedirs(self.directory, exist_ok=True)
            save_pandas_table(os.path.join(self.directory, 'results'), results)
        return results
