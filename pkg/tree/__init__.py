from tree.matrices import *
from tree.edges import *
