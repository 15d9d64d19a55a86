#ifndef NEJAC_RESIDUES_HPP
#define NEJAC_RESIDUES_HPP

#include "nejac/groebner.hpp"
#include "nejac/quotient.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nejac {

class ResidueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResidueValue {
  Complex value;
  std::optional<Rational> exact;
};

// G(z) / J_F(z) at a simple zero; throws ResidueError("zero is not simple") otherwise.
ResidueValue residue_at_simple_zero(const PolyMap& f, const AffineZero& z, const Poly& g);

struct ResidueOptions {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  bool perturbation = true;
  std::vector<Rational> schedule{Rational(1, 1000), Rational(1, 10000), Rational(1, 100000)};
};

struct MethodResult {
  std::string method;
  std::optional<Rational> exact;
  Complex value;
  double error_estimate = 0.0;
};

struct ZeroResidue {
  AffineZero zero;
  Complex value;
  std::optional<Rational> exact;
  bool cluster = false;  // multiplicity > 1: value is the residue of the whole cluster
  std::string method;
};

struct PerturbationResult {
  Complex value;
  double error_estimate = 0.0;
  std::vector<Complex> cluster_values;  // aligned with the unperturbed zeros
  std::vector<Rational> direction;
  std::vector<double> schedule_used;
};

struct ResidueReport {
  Poly g;
  std::vector<ZeroResidue> per_zero;
  std::optional<Rational> global_sum_exact;
  std::optional<Complex> global_sum_numeric;
  std::vector<MethodResult> methods;
  bool agree = true;
  std::string disagreement;
  std::vector<Rational> combination;
  std::vector<Rational> perturbation_direction;
};

// Shares the quotient algebra, zeros and residue functional across many G.
class ResidueEngine {
 public:
  explicit ResidueEngine(PolyMap f, ResidueOptions opts = {});

  const PolyMap& map() const { return f_; }
  const QuotientAlgebra& algebra() const { return qa_; }
  const Poly& jacobian_poly() const { return jac_; }
  const ZeroSet& zeros();
  bool all_simple();

  // Residue functional from the Bezoutian: always applicable, exact.
  Rational bezoutian(const Poly& g);
  // trace(M_G M_J^{-1}) when M_J is invertible.
  std::optional<Rational> trace_formula(const Poly& g);
  // trace(M_h) for some h with h J = G in the quotient, when one exists.
  std::optional<Rational> jacobian_identity(const Poly& g);
  // Transformation law onto the eliminants (P_1(Z_1), ..., P_n(Z_n)), when small enough.
  std::optional<Rational> transformation_law(const Poly& g);
  std::optional<Complex> simple_zero_sum(const Poly& g);
  std::optional<PerturbationResult> perturbation(const Poly& g);

  ResidueReport report(const Poly& g);

 private:
  struct Perturbed {
    Rational t;
    std::vector<std::vector<std::size_t>> clusters;  // perturbed zero indices per unperturbed zero
    ZeroSet zeros;
  };
  void prepare_bezoutian();
  void prepare_transformation();
  void prepare_perturbation();
  std::optional<Rational> cluster_residue_exact(std::size_t zero_index, const Poly& g);

  PolyMap f_;
  ResidueOptions opts_;
  QuotientAlgebra qa_;
  Poly jac_;
  std::optional<ZeroSet> zeros_;
  std::optional<std::vector<Rational>> tau_;
  std::optional<ExactLU> jac_lu_;
  QMatrix jac_mat_;
  int transform_state_ = 0;  // 0 unknown, 1 ready, -1 not applicable
  const Rational& transform_coeff(std::size_t i, int e);
  std::vector<UPoly> transform_polys_;
  std::vector<std::vector<Rational>> transform_tables_;
  std::vector<std::vector<Rational>> transform_rems_;
  Poly transform_det_;
  bool perturb_ready_ = false;
  std::vector<Perturbed> perturbed_;
  std::vector<Rational> direction_;
  std::map<std::size_t, QMatrix> idempotents_;
};

ResidueReport global_residue(const PolyMap& f, const Poly& g, const ResidueOptions& opts = {});

struct JacobiReport {
  int nu = 0;
  int threshold = 0;
  int extra = 0;
  std::vector<std::string> checked;  // monomials below the threshold
  bool all_zero = true;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, Rational>> witnesses;  // nonzero sums at degrees T .. T-1+extra
  std::vector<std::pair<std::string, Rational>> witness_rows;  // every evaluated witness monomial
  bool methods_agree = true;
};

JacobiReport jacobi_verify(const PolyMap& f, int nu, int max_extra_degree, const ResidueOptions& opts = {});
JacobiReport jacobi_verify(const PolyMap& f, int max_extra_degree, const ResidueOptions& opts = {});

}  // namespace nejac

#endif
