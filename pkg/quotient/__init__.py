from quotient.p1 import *
from quotient.graph import *
from quotient.projection import *
from quotient.export import *
