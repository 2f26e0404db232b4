"""Default configuration template for DecoChain."""

DEFAULT_CONFIG_YAML = r"""# ==============================================================================
# DecoChain Configuration File
#
# Flat keys; any of them can be overridden on the command line.
# JSON with the same keys is accepted as well.
# ==============================================================================

# ------------------------------------------------------------------------------
#  1. Physical parameters (units with hbar = k_B = M_A = M_B = 1)
# ------------------------------------------------------------------------------
omega: 1.0      # frequency of subsystem A
omega_B: 1.0    # frequency of subsystem B
lambda: 0.1     # A-B coupling
gamma0: 0.0     # bath damping constant; 0 isolates the composite system
kT: 100.0       # bath temperature
sigma: 0.01     # squared width of B's initial packet
cutoff: 50.0    # bath cutoff frequency
# sigma_A: 0.01          # A packet position width (defaults to sigma)
# sigma_p0: 0.7071       # A packet momentum width (defaults to sqrt(hbar*M_A*omega/2))
# bath_product: 1.0      # sets gamma0*kT directly (gamma0 = 0.01, kT takes the rest)

# ------------------------------------------------------------------------------
#  2. Sampling
# ------------------------------------------------------------------------------
cases: [a, b, c, d]
horizon: 10.0
points: 4096
epsilon: 0.01              # Gamma threshold that defines the decoherence time
method: closed_form        # closed_form | quadrature | both
prefactor_scope: both      # both | first_only
coherence_separation: 1.0  # x_f - x_f'
workers: 1

# ------------------------------------------------------------------------------
#  3. Unstable-case estimator
# ------------------------------------------------------------------------------
policy:
  reference: threshold     # threshold | fixed (then set reference_time)
  t_max: critical          # critical | half_decay | fixed (then set t_max_value)
"""
