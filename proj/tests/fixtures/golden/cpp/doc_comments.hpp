/**
 * @brief Solves the Poisson equation.
 *
 * The boundary handling is a placeholder.
 */
class Solver {
 public:
  /// Number of iterations.
  /// FIXME: not adaptive yet
  int iterations = 10;
  //! Tolerance of the solve.
  double tol = 1e-8;  ///< absolute, not relative
  /*! Alternative doc form */
};
