from graphing.grapher import *
