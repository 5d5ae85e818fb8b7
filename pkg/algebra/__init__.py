from algebra.polynomial import *
from algebra.rational import *
from algebra.places import *
from algebra.syntax import *
