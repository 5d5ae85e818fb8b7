from cochains.linalg import *
from cochains.harmonic import *
from cochains.operators import *
from cochains.trace import *
from cochains.newform import *
