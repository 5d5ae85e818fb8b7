from local.local_element import *
from local.teichmuller import *
from local.quadratic import *
from local.tate import *
