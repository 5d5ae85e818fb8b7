from symbols.symbols import *
from symbols.measures import *
