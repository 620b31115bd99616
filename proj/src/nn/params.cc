#include "radnlp/nn/params.h"

#include "radnlp/error.h"

namespace radnlp::nn {

std::vector<ParamSlot> zip_slots(const ParamList& params, const ParamList& grads) {
  if (params.size() != grads.size()) throw Error("zip_slots: list size mismatch");
  std::vector<ParamSlot> out;
  out.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].name != grads[i].name ||
        !params[i].value->same_shape(*grads[i].value)) {
      throw Error("zip_slots: mismatch at " + params[i].name);
    }
    out.push_back({params[i].name, params[i].value, grads[i].value});
  }
  return out;
}

}  // namespace radnlp::nn
