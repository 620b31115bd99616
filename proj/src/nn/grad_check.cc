#include "radnlp/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radnlp::nn {

double GradCheckReport::max_rel_error() const {
  double m = 0.0;
  for (const auto& t : tensors) m = std::max(m, t.max_rel_error);
  return m;
}

std::string GradCheckReport::summary() const {
  std::ostringstream out;
  for (const auto& t : tensors) {
    out << t.name << ": rel " << t.max_rel_error << " abs " << t.max_abs_error
        << " @" << t.worst_index << '\n';
  }
  return out.str();
}

GradCheckReport grad_check(const std::function<double()>& loss,
                           std::span<const ParamSlot> slots,
                           const GradCheckOptions& options) {
  GradCheckReport report;
  const double h = options.step;
  for (const auto& slot : slots) {
    TensorGradError err;
    err.name = slot.name;
    Matrix& value = *slot.value;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double saved = value[i];
      value[i] = saved + h;
      const double up = loss();
      value[i] = saved - h;
      const double down = loss();
      value[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = (*slot.grad)[i];
      const double abs_err = std::abs(analytic - numeric);
      const double denom = std::max({std::abs(analytic), std::abs(numeric),
                                     options.denominator_floor});
      const double rel = abs_err / denom;
      err.max_abs_error = std::max(err.max_abs_error, abs_err);
      if (rel > err.max_rel_error) {
        err.max_rel_error = rel;
        err.worst_index = i;
      }
    }
    report.tensors.push_back(err);
  }
  return report;
}

}  // namespace radnlp::nn
