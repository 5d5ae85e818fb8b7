from experiment.compare import *
from experiment.pipeline import *
from experiment.report import *
from experiment.experiment import *
from experiment.session import *
from experiment.parameterizer import *
from experiment.search import *
