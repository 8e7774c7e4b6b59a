#pragma once

#include <stdexcept>
#include <string>

#include "korovkin/analysis.hpp"
#include "korovkin/capacity.hpp"
#include "korovkin/grid.hpp"
#include "korovkin/operators.hpp"

namespace korovkin {

// Raised on malformed text forms; carries the offending input and a position.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, const std::string& input, std::size_t pos);
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
};

// Text forms (normative grammar in FORMATS.md):
//   functions:  const:1  pr:1  negpr:1  sq  mono:3  step:0.5@0,1
//               cos  sin  negcos  negsin  table:0.1,0.2,...
//   capacities: id  sqrt  pow:0.5  table:0,0;0.5,0.8;1,1
//   operators:  bk1:n=50  bkc1:n=50,cap=sqrt  bkc2:n=20,cap=sqrt
//               szasz:n=50,cap=id,tail=1e-12,xmax=4
//               slide:r=-0.1,R=0.1  slide-trunc:r=-0.1,R=0.1
//               perturb:n=10  maximal  maximal:radii=0.1;0.2
//               cesaro(bk1):n=20
FunctionSpec parse_function(const std::string& text);
Capacity parse_capacity(const std::string& text);
OperatorSpec parse_operator(const std::string& text);
DomainKind parse_domain_kind(const std::string& text);
ConvergenceMode parse_mode(const std::string& text);

std::string to_string(const FunctionSpec& spec);
std::string to_string(const Capacity& cap);
std::string to_string(const OperatorSpec& spec);
std::string to_string(DomainKind kind);
std::string to_string(ConvergenceMode mode);

// 12-significant-digit formatting used by every CSV emitter.
std::string format_number(double x);

}  // namespace korovkin
