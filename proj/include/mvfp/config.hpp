#pragma once

namespace mvfp {

// Process-wide knobs. Defaults match the library contract; tests and the
// CLI may override them per run.
struct Config {
  // Comparison tolerance used by float-mode scalars. Rational mode
  // ignores it entirely.
  static double float_tolerance();
  static void set_float_tolerance(double tol);

  // Maximum nesting level accepted for hyperspace sets.
  static int max_hyperspace_level();
  static void set_max_hyperspace_level(int level);
};

}  // namespace mvfp
