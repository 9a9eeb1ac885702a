#pragma once

#include <iosfwd>
#include <string>

#include "matgrow/geometry.hpp"
#include "matgrow/matroid.hpp"
#include "matgrow/modsum.hpp"
#include "matgrow/projection.hpp"

namespace matgrow {

/// Matroid text block:
///   matroid <name>
///   type linear|explicit
/// then either the matrix format (columns are the elements) or
///   rank <r>
///   elements <n>
///   bases
///   <one sorted basis per line>
/// Ground slots are compacted to 0..n-1 on writing.
std::string format_matroid(const Matroid& m, const std::string& name);
Matroid read_matroid(std::istream& in);
Matroid load_matroid(const std::string& path);
void save_matroid(const std::string& path, const Matroid& m,
                  const std::string& name);

/// Certificate file: "q", "K", "seed" lines followed by the lifted and
/// projected matroid blocks.
std::string format_certificate(const ProjectionCertificate& c);
ProjectionCertificate read_certificate(std::istream& in);
ProjectionCertificate load_certificate(const std::string& path);

/// Sum spec: two matroid blocks plus a line "shared a0:b0 a1:b1 ..." pairing
/// left and right element indices.
std::string format_sum_spec(const SumSpec& spec);
SumSpec read_sum_spec(std::istream& in);

std::string format_density_report(const DensityReport& r, int q);
std::string format_stack_witness(const StackWitness& w);

}  // namespace matgrow
