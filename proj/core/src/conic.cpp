#include "chebyprod/conic.hpp"

#include <ostream>
#include <stdexcept>

namespace chebyprod {

int ConicProblem::PsdBlock::var_at(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle: offset of row i is i*size - i*(i-1)/2.
  const int offset = i * size - i * (i - 1) / 2;
  return entry_var[offset + (j - i)];
}

int ConicProblem::add_var(const std::string& name, double obj_coef) {
  var_names.push_back(name);
  objective.push_back(obj_coef);
  return static_cast<int>(var_names.size()) - 1;
}

namespace {

void write_terms(std::ostream& os, const std::vector<std::pair<int, double>>& terms) {
  for (const auto& [idx, coef] : terms) os << ' ' << idx << ':' << coef;
}

void write_affine(std::ostream& os, const char* tag, const ConicProblem::Affine& a) {
  os << "  " << tag << ' ' << a.constant;
  write_terms(os, a.terms);
  os << '\n';
}

}  // namespace

void write_conic(std::ostream& os, const ConicProblem& prob) {
  os.precision(17);
  os << "CHEBYPROD-CONIC 1\n";
  os << "VARS " << prob.var_names.size() << '\n';
  for (std::size_t i = 0; i < prob.var_names.size(); ++i)
    os << "VAR " << i << ' ' << prob.var_names[i] << '\n';

  os << "OBJ";
  for (std::size_t i = 0; i < prob.objective.size(); ++i)
    if (prob.objective[i] != 0.0) os << ' ' << i << ':' << prob.objective[i];
  os << '\n';

  if (!prob.nonneg_vars.empty()) {
    os << "NONNEG";
    for (int v : prob.nonneg_vars) os << ' ' << v;
    os << '\n';
  }

  for (const auto& row : prob.eq) {
    os << "EQ";
    write_terms(os, row.terms);
    os << " RHS " << row.rhs << '\n';
  }
  for (const auto& row : prob.ineq) {
    os << "INEQ";
    write_terms(os, row.terms);
    os << " RHS " << row.rhs << '\n';
  }
  for (const auto& blk : prob.soc) {
    os << "SOC " << blk.label << '\n';
    write_affine(os, "T ", blk.t);
    write_affine(os, "U1", blk.u1);
    write_affine(os, "U2", blk.u2);
  }
  for (const auto& blk : prob.psd) {
    os << "PSD " << blk.label << " SIZE " << blk.size << '\n';
    int k = 0;
    for (int i = 0; i < blk.size; ++i)
      for (int j = i; j < blk.size; ++j, ++k)
        os << "  ENTRY " << i << ' ' << j << " VAR " << blk.entry_var[k] << '\n';
  }
  os << "END\n";
}

}  // namespace chebyprod
