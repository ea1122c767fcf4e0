#pragma once

#include <string>
#include <vector>

#include "anyon/bits.hpp"

// Geometry and stabilizer structure of the L x L planar code.
//
// Data qubits sit on the vertices of an L x L grid; qubit (r, c) has index
// r*L + c. Stabilizer plaquettes are the checkerboard faces of the grid,
// anchored at (row, col) with row, col in [-1, L-1]: a face covers the grid
// qubits among rows row..row+1, cols col..col+1. Interior faces have weight
// 4, truncated boundary faces weight 2.
//
//   s-plaquettes (X-type checks, host e anyons): faces with row+col even.
//     Weight-2 s-faces run along the top and bottom edges only, so a chain
//     of Z flips can terminate invisibly at the left or right edge: e anyons
//     are absorbed there.
//   p-plaquettes (Z-type checks, host m anyons): faces with row+col odd.
//     Weight-2 p-faces run along the left and right edges; m anyons are
//     absorbed at the top and bottom.
//
// z_cut is a full left-right chain (row 0): applying Z on all of it commutes
// with every stabilizer and transports an e anyon across the code. x_cut is
// the top-bottom chain (column 0), likewise for X and m. The two chains
// overlap on exactly one qubit, so each detects the other: the e-class of a
// pattern is the overlap parity of its Z flips with x_cut, and the m-class
// the parity of its X flips with z_cut. These parities are invariant under
// multiplication by any stabilizer.

namespace anyon {

struct FaceCoord {
    int row;
    int col;
};

struct PlanarLayout {
    int size = 0;         // L
    int qubit_count = 0;  // L*L

    std::vector<std::vector<int>> s_supports;  // sorted qubit indices, weight 2 or 4
    std::vector<std::vector<int>> p_supports;
    std::vector<FaceCoord> s_coords;  // face anchors, same order as supports
    std::vector<FaceCoord> p_coords;

    // incidence lists: qubit index -> stabilizer ids containing it
    std::vector<std::vector<int>> qubit_s_stabs;
    std::vector<std::vector<int>> qubit_p_stabs;

    std::vector<int> z_cut;  // row 0, crosses left boundary to right
    std::vector<int> x_cut;  // column 0, crosses top to bottom
    BitVec z_cut_mask;
    BitVec x_cut_mask;

    int qubit_index(int row, int col) const { return row * size + col; }
};

// Builds the layout for L >= 2. Throws std::invalid_argument otherwise.
PlanarLayout build_layout(int size);

struct ErrorPattern {
    BitVec x_flips;
    BitVec z_flips;

    bool operator==(const ErrorPattern& other) const {
        return x_flips == other.x_flips && z_flips == other.z_flips;
    }
};

ErrorPattern empty_pattern(const PlanarLayout& layout);

struct Syndrome {
    BitVec e_defects;  // bit i set iff s-plaquette i is occupied
    BitVec m_defects;

    bool operator==(const Syndrome& other) const {
        return e_defects == other.e_defects && m_defects == other.m_defects;
    }
    bool empty() const { return !e_defects.any() && !m_defects.any(); }
};

struct LogicalClass {
    int e_parity = 0;
    int m_parity = 0;

    int index() const { return e_parity | (m_parity << 1); }  // vacuum = 0
    bool operator==(const LogicalClass& other) const {
        return e_parity == other.e_parity && m_parity == other.m_parity;
    }
    bool trivial() const { return e_parity == 0 && m_parity == 0; }
};

// s-plaquette i is defected iff it shares an odd number of qubits with the
// Z flips (and p-plaquettes likewise with the X flips): CSS decoupling.
Syndrome syndrome_of(const PlanarLayout& layout, const ErrorPattern& err);

LogicalClass logical_class_of(const PlanarLayout& layout, const ErrorPattern& err);

// True iff e1 xor e2 lies in the stabilizer group (empty syndrome and
// trivial logical class).
bool is_equivalent(const PlanarLayout& layout, const ErrorPattern& e1, const ErrorPattern& e2);

// JSON dump of the geometry (qubit coordinates, stabilizer supports, cuts)
// for debugging and cross-implementation comparison.
std::string layout_json(const PlanarLayout& layout);

}  // namespace anyon
