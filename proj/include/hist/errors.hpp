#pragma once

#include <stdexcept>
#include <string>

namespace hist {

enum class errc {
  malformed_header,
  vertex_out_of_range,
  self_loop,
  duplicate_edge,
  edge_not_in_graph,
  invalid_peo,
  not_chordal,
  not_split,
  not_block_split,
  is_block_split,
  is_split,
  wrong_diameter,
  diameter_too_large,
  disconnected,
  too_large,
  quotient_too_large,
  budget_exceeded,
  kernel_undecided,
  invalid_decomposition,
  not_bipartite,
  unequal_parts,
  not_pendant,
  empty_params,
  too_small,
  malformed_witness,
  precondition,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_header: return "MalformedHeader";
    case errc::vertex_out_of_range: return "VertexOutOfRange";
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::edge_not_in_graph: return "EdgeNotInGraph";
    case errc::invalid_peo: return "InvalidPEO";
    case errc::not_chordal: return "NotChordal";
    case errc::not_split: return "NotSplit";
    case errc::not_block_split: return "NotBlockSplit";
    case errc::is_block_split: return "IsBlockSplit";
    case errc::is_split: return "IsSplit";
    case errc::wrong_diameter: return "WrongDiameter";
    case errc::diameter_too_large: return "DiameterTooLarge";
    case errc::disconnected: return "Disconnected";
    case errc::too_large: return "TooLarge";
    case errc::quotient_too_large: return "QuotientTooLarge";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::kernel_undecided: return "KernelUndecided";
    case errc::invalid_decomposition: return "InvalidDecomposition";
    case errc::not_bipartite: return "NotBipartite";
    case errc::unequal_parts: return "UnequalParts";
    case errc::not_pendant: return "NotPendant";
    case errc::empty_params: return "EmptyParams";
    case errc::too_small: return "TooSmall";
    case errc::malformed_witness: return "MalformedWitness";
    case errc::precondition: return "Precondition";
  }
  return "Unknown";
}

// Library error. `line` is 1-based and set for parse errors only.
struct error : std::runtime_error {
  errc code;
  int line;

  error(errc c, const std::string& what, int line_no = -1)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what +
                           (line_no >= 0 ? " (line " + std::to_string(line_no) + ")" : "")),
        code(c),
        line(line_no) {}
};

}  // namespace hist
