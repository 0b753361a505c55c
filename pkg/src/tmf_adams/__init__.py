"""Exact models of Adams operations on Tmf, KU, KO and Tmf(2)."""

from .adams import (
    OperationReport,
    anderson_dual_group,
    delta_power,
    diagram_check,
    psi,
    psi_dual,
    verify_composition,
    verify_conjecture,
    verify_dual_operations,
    verify_self_duality,
    verify_theorem_b,
)
from .exactmath import FinAbGroup, InvertedSet, LocalizedScalar, ext1_to, hom_to, ses_assemble, smith_normal_form
from .models import SpectrumModel, homotopy_group, ledger_lookup, witness
from .qseries import QSeries, eta_product_delta, tate_a4, tate_a6, verify_tate_identities, weierstrass_invariants
from .wpsline import WPSConfig, adams_scalar, h0_basis, h1_basis, koszul_cohomology, serre_pairing

__version__ = "0.1.0"
