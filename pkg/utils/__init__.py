from utils.utils import *
from utils.config import *
