#pragma once

#include <iosfwd>

#include "sigmanet/ffnn.hpp"
#include "sigmanet/rbfnn.hpp"
#include "sigmanet/svm.hpp"

namespace sigmanet {

// Versioned plain-text model files. Every real is written with 17 significant
// digits so a write/read cycle reproduces the model exactly.
//
//   sigmanet-rbf 1            sigmanet-svm 1                 sigmanet-mlp 1
//   <J> <dim>                 <kernel> <sigma> <c> <n> <dim> <layers>
//   centers (J rows)          <bias>                         per layer: <out> <in>,
//   widths                    n rows: index alpha y x...     weight rows, bias row
//   weights
//   bias

void write_model(std::ostream& out, const RbfNetwork& net);
void write_model(std::ostream& out, const SvmModel& m);
void write_model(std::ostream& out, const MlpNetwork& net);

RbfNetwork read_rbf_network(std::istream& in);
SvmModel read_svm_model(std::istream& in);
MlpNetwork read_mlp_network(std::istream& in);

}  // namespace sigmanet
