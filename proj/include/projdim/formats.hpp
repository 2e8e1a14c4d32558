#pragma once

// Plain-text formats for matrices, functions, graphs, branching programs,
// assignments and biclique collections. Lines starting with '#' are ignored.

#include "projdim/assign.hpp"
#include "projdim/bp.hpp"
#include "projdim/functions.hpp"
#include "projdim/gf.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace projdim::formats {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "q rows cols" followed by rows of space-separated entries.
std::string write_matrix(const gf::FieldMatrix& m);
gf::FieldMatrix read_matrix(const std::string& text);

/// "n" followed by 2^n lines of 2^n bits (row x, column y).
std::string write_function(const BooleanFunction& f);
/// Dense table text, or the shorthand "family:<name>:<n>[:<q>]".
BooleanFunction read_function(const std::string& text);
/// Shorthand only: "family:eq:2", or compact forms eq2, ineq2, ip2, disj2,
/// ed4, pal2, si2 (d) and parity4 (total bits).
BooleanFunction function_from_spec(const std::string& spec);

/// "L R" followed by L rows of R digits.
std::string write_graph_adjacency(const BipartiteGraph& g);
/// "edges L R m" followed by m lines "u v" (0-based).
std::string write_graph_edges(const BipartiteGraph& g);
/// Accepts either graph format.
BipartiteGraph read_graph(const std::string& text);

/// "vars n", "node <id> <var>", "edge <id> <bit> <id>", "start|accept|reject <id>".
std::string write_program(const BranchingProgram& bp);
BranchingProgram read_program(const std::string& text);

/// "q d" then blocks "left <vertex> <k>" / "right <vertex> <k>" of k rows.
std::string write_assignment(const ProjectiveAssignment& phi);
ProjectiveAssignment read_assignment(const std::string& text);

/// "q d", "n <n>", then blocks "U <i> <a> <k>" / "V <j> <b> <k>" (i, j 1-based).
std::string write_bitwise(const BitwiseAssignment& ba);
BitwiseAssignment read_bitwise(const std::string& text);

/// "bicliques L R k <cover|partition>" then k lines "a1 a2 ... | b1 b2 ...".
std::string write_bicliques(const BicliqueCollection& bc);
BicliqueCollection read_bicliques(const std::string& text);

/// "standard d L R" then lines "left <vertex> i1 i2 ..." / "right <vertex> ...".
std::string write_standard(const StandardAssignment& sa);

std::string read_file(const std::string& path);
/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace projdim::formats
