from elliptic.curve import *
from elliptic.reduction import *
from elliptic.fixtures import *
