"""weylscope: restricted root systems, resonance-region membership,
elementary spherical functions and Weyl-law leading terms for the
semisimple groups in the catalog."""

from .descriptors import GroupDescriptor, UnsupportedDescriptor, parse_group
from .rootsystem import (
    CapExceeded,
    RootSystem,
    WeylElement,
    build_root_system,
    dominantize,
    killing_pairing,
    longest_element,
    simple_reflection,
    w0_invariants,
    weyl_enumerate,
    weyl_orbit,
)
from .regions import (
    Classification,
    GroupFacts,
    NoQuantitativeGap,
    PK,
    QuantumObstruction,
    Verdict,
    classify_candidate,
    first_band_region_alt,
    gap_certificate,
    group_facts,
    in_conv_weyl_rho,
    in_dominant_closure,
    in_exceptional_A,
    in_first_band_cone_F,
    in_neg_dual_cone_closure,
    in_pos_dual_cone,
    in_set_B,
    p_k,
    quantum_obstruction,
)
from .spherical import (
    BoundednessVerdict,
    PsdVerdict,
    QuadratureNotConverged,
    SphericalConfig,
    SphericalValue,
    boundedness_probe,
    lp_divergence_verdict,
    lp_membership_predict,
    lp_norm_truncated,
    psd_gram_test,
    spherical_phi,
)
from .weyllaw import (
    IndicatorUnbounded,
    OmegaSpec,
    counting_lower_bound,
    dim_symmetric_space,
    leading_term_ball,
    vol_adk_omega,
)
from .figures import SliceSpec, overlay_mask, slice_masks, write_csv, write_svg

__version__ = "0.1.0"

__all__ = [
    "GroupDescriptor", "UnsupportedDescriptor", "parse_group",
    "CapExceeded", "RootSystem", "WeylElement", "build_root_system",
    "dominantize", "killing_pairing", "longest_element", "simple_reflection",
    "w0_invariants", "weyl_enumerate", "weyl_orbit",
    "Classification", "GroupFacts", "NoQuantitativeGap", "PK",
    "QuantumObstruction", "Verdict", "classify_candidate",
    "first_band_region_alt", "gap_certificate", "group_facts",
    "in_conv_weyl_rho", "in_dominant_closure", "in_exceptional_A",
    "in_first_band_cone_F", "in_neg_dual_cone_closure", "in_pos_dual_cone",
    "in_set_B", "p_k", "quantum_obstruction",
    "BoundednessVerdict", "PsdVerdict", "QuadratureNotConverged",
    "SphericalConfig", "SphericalValue", "boundedness_probe",
    "lp_divergence_verdict", "lp_membership_predict", "lp_norm_truncated",
    "psd_gram_test", "spherical_phi",
    "IndicatorUnbounded", "OmegaSpec", "counting_lower_bound",
    "dim_symmetric_space", "leading_term_ball", "vol_adk_omega",
    "SliceSpec", "overlay_mask", "slice_masks", "write_csv", "write_svg",
]
