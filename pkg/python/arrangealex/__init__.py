# import some important classes and functions to the main module
from .arrangement import Arrangement, AffineLine  # noqa
from .config import EngineConfig  # noqa
from .fields import FieldConfig, GaussianRational  # noqa
from .fox import TwistSpec, twisted_invariants  # noqa
from .laurent import LaurentPoly, PolyMatrix  # noqa
from .presentation import FreeWord, Presentation, presentation  # noqa
from .closed_forms import closed_form_report  # noqa
from .corpus import case_names, get_data_dir, load_case  # noqa
