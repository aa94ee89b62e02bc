from .constants import PhysicalConstants
from .exceptions import *
