// Walkthrough of the full pipeline on one small instance: build a UBQP
// problem, lift it to the structured LP, solve exactly, recover a binary
// point, and cross-check against brute force.

#include <iostream>
#include <vector>

#include <cubelift/cubelift.hpp>

using namespace cubelift;

int main() {
  // f(x) = x^T Q x + b^T x with Q symmetric, zero diagonal.
  Matrix q = zero_matrix(3, 3);
  q[0][1] = q[1][0] = -10;
  q[0][2] = q[2][0] = -20;
  q[1][2] = q[2][1] = -10;
  UbqpInstance inst(3, q, {-2, -2, -26});

  std::cout << "instance JSON:\n"
            << instance_to_json(inst).dump(2) << "\n\n";

  AssembledLp lp = assemble(inst);
  std::cout << "LP size: " << lp.A.rows() << " rows x " << lp.A.cols()
            << " cols, " << lp.A.nnz() << " nonzeros\n";

  LpSolution sol = solve(lp);
  std::cout << "status: " << to_string(sol.status)
            << ", objective: " << format_rational(sol.objective)
            << ", iterations: " << sol.iterations << "\n";

  const Layout& layout = lp.layout;
  std::vector<Rational> w(sol.primal.begin() + 8 * layout.N(),
                          sol.primal.end());
  std::cout << "w* =";
  for (const auto& v : w) std::cout << " " << format_rational(v);
  std::cout << "\n";

  RecoveryResult rec = recover_x(lifted_from_w(w, layout.n()), layout);
  std::cout << "recovered x = (";
  for (std::size_t i = 0; i < rec.x.size(); ++i)
    std::cout << (i ? "," : "") << rec.x[i];
  std::cout << "), binary: " << (rec.binary ? "yes" : "no") << "\n";

  BruteForceResult bf = brute_force_min(inst);
  std::cout << "brute force minimum: " << format_rational(bf.value) << "\n";
  std::cout << "LP = brute force: "
            << (sol.objective == bf.value ? "yes" : "NO") << "\n";
  return 0;
}
