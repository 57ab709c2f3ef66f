from dedekind_pcoef.lattice.antichains import *
from dedekind_pcoef.lattice.collections import *
from dedekind_pcoef.lattice.exceptions import *
from dedekind_pcoef.lattice.intervals import *
from dedekind_pcoef.lattice.connections import *
from dedekind_pcoef.lattice.oracle import *
from dedekind_pcoef.lattice.symmetry import *

from dedekind_pcoef.lattice.utils import lattice_logger
