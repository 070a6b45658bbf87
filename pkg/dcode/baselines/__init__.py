# Local
from . import colony, evolution, genetic, gradient, swarm
