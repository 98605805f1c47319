"""
Application Constants
Central location for identifiers, orders and formats shared across modules
"""

# Logging
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# CLI exit codes
EXIT_OK = 0
EXIT_COMPUTATION_ERROR = 1
EXIT_USAGE_ERROR = 2

# Bound parameters, listed along the partial order (smaller bounds first)
PARAMETER_ORDER = [
    'phi_p_lf',
    'phi_lf',
    'phi_p_f',
    'phi_f',
    'kappa',
    'phi_p_l',
    'phi_l',
    'phi_p',
    'phi',
    'w_phi_p_lf',
    'w_phi_lf',
    'w_phi_f',
    'w_phi_p_l',
    'w_phi_l',
    'w_phi',
]

FRACTIONAL_PARAMETERS = {'phi_f', 'phi_lf', 'phi_p_f', 'phi_p_lf', 'w_phi_f', 'w_phi_lf', 'w_phi_p_lf'}

PARAMETER_LABELS = {
    'phi': 'generalized clique cover',
    'phi_f': 'fractional generalized clique cover',
    'phi_l': 'local generalized clique cover',
    'phi_lf': 'fractional local generalized clique cover',
    'phi_p': 'partition generalized multicast',
    'phi_p_f': 'fractional partition generalized multicast',
    'phi_p_l': 'partitioned local generalized clique cover',
    'phi_p_lf': 'fractional partitioned local generalized clique cover',
    'kappa': 'min-rank (optimal scalar linear length)',
    'w_phi': 'weak clique cover',
    'w_phi_f': 'fractional weak clique cover',
    'w_phi_l': 'local weak clique cover',
    'w_phi_lf': 'fractional local weak clique cover',
    'w_phi_p_l': 'partitioned local weak clique cover',
    'w_phi_p_lf': 'fractional partitioned local weak clique cover',
}

# Scheme identifiers accepted by `simulate`
SCHEME_NAMES = ['clique', 'local', 'multicast', 'partitioned-local', 'kappa', 'design']

# Bundled fixtures, addressable on the command line as @name
FIXTURES = ['fano', 'fig4', 'remark_comp', 'remark_comp1', 'gf4_remark', 'fano_design']
FIXTURE_PREFIX = '@'

# Output formats
OUTPUT_FORMATS = ['json', 'table']

# Largest projective plane order built by `design --plane`
PLANE_MAX_ORDER = 16

# Codewords generated per vectorised chunk
CODEWORD_CHUNK = 4096
