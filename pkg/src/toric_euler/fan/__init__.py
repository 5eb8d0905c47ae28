from ._base import DivisorLike as DivisorLike
from ._base import FaceComplex as FaceComplex
from ._base import Fan as Fan
from ._base import WeilDivisor as WeilDivisor
from ._base import as_coefficients as as_coefficients
from ._base import face_complex as face_complex
from ._base import is_face as is_face
from .document import FanDocument as FanDocument
from .document import load_fan as load_fan
from .library import library_fan as library_fan
from .library import library_fans as library_fans
from .library import resolve_fan as resolve_fan
from .validation import ValidationReport as ValidationReport
from .validation import require_valid_fan as require_valid_fan
from .validation import validate_fan as validate_fan
