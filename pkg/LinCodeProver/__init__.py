from LinCodeProver import utils
from LinCodeProver import exactCombinatorics
from LinCodeProver import spectra
from LinCodeProver import boundsTables
from LinCodeProver import exclusionEngine
from LinCodeProver import feasibilitySearch
from LinCodeProver import z4Gray
from LinCodeProver import proofCertificate
from LinCodeProver import prover
from LinCodeProver import smallCodes

__version__ = utils.TOOL_VERSION
