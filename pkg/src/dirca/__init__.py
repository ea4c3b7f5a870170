"""Directional dynamics of one-dimensional cellular automata.

Exact machinery for blocking words, image/limit languages, surjectivity and
Bernoulli word probabilities, plus seeded Monte Carlo estimation of generic
limit sets along curves and a six-class evidence-based classifier.
"""

from .blocking import (
    BlockingVerdict,
    Witness,
    detect_spreading,
    monochrome_wedge_check,
    periodic_monochrome_probe,
    search_blocking,
    strip_width,
    verify_blocking,
)
from .classify import ClassReport, McParams, classify, default_slope_grid
from .core import (
    Alphabet,
    FiniteLanguage,
    PeriodicConfig,
    Sft,
    Word,
    is_subword,
    metric_distance,
    sft_contains,
    sft_language,
)
from .curves import Curve, Verdict, compare, in_interval, max_variation, parse_curve
from .errors import CapExceeded, ConeTooWide, DircaError, RuleFormatError, TableTooLarge
from .langs import (
    SampledLanguage,
    generic_limit_sample,
    image_language,
    is_surjective,
    language_trace,
    limit_language_approx,
    nilpotency_probe,
)
from .measure import BernoulliMeasure, mu_limit_probe, mu_word_probability
from .render import Palette, render_spacetime
from .rules import (
    LocalRule,
    OrbitTrace,
    directional_orbit,
    dump_rule,
    parse_rule,
    power_rule,
    product_rule,
    shift_composed_rule,
    step,
)
from .zoo import ZooEntry, builtin, gliders_arrow_oracle, is_left_balanced, is_right_balanced, zoo_names

__version__ = "0.1.0"
