from integrals.multiplicative import *
