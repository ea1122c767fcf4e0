#include "anyon/planar_code.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace anyon {

namespace {

// Grid qubits covered by the face anchored at (row, col), clipped to the
// lattice. Interior faces keep all four corners, boundary faces two.
std::vector<int> face_support(int size, int row, int col) {
    std::vector<int> qubits;
    for (int r = row; r <= row + 1; ++r) {
        for (int c = col; c <= col + 1; ++c) {
            if (r >= 0 && r < size && c >= 0 && c < size) qubits.push_back(r * size + c);
        }
    }
    std::sort(qubits.begin(), qubits.end());
    return qubits;
}

bool face_is_s(int row, int col) { return ((row + col) % 2 + 2) % 2 == 0; }

// Which truncated boundary faces exist. Top/bottom keep only s-coloured
// positions, left/right only p-coloured ones; the missing positions are the
// absorbing boundaries.
bool boundary_face_included(int size, int row, int col) {
    const bool top = row == -1;
    const bool bottom = row == size - 1;
    const bool left = col == -1;
    const bool right = col == size - 1;
    if ((top || bottom) && !(left || right)) return face_is_s(row, col);
    if ((left || right) && !(top || bottom)) return !face_is_s(row, col);
    return false;  // corners never carry a check
}

}  // namespace

PlanarLayout build_layout(int size) {
    if (size < 2) throw std::invalid_argument("build_layout: size must be >= 2");

    PlanarLayout layout;
    layout.size = size;
    layout.qubit_count = size * size;

    for (int row = -1; row <= size - 1; ++row) {
        for (int col = -1; col <= size - 1; ++col) {
            const bool interior = row >= 0 && row < size - 1 && col >= 0 && col < size - 1;
            if (!interior && !boundary_face_included(size, row, col)) continue;
            auto support = face_support(size, row, col);
            if (face_is_s(row, col)) {
                layout.s_supports.push_back(std::move(support));
                layout.s_coords.push_back(FaceCoord{row, col});
            } else {
                layout.p_supports.push_back(std::move(support));
                layout.p_coords.push_back(FaceCoord{row, col});
            }
        }
    }

    layout.qubit_s_stabs.assign(layout.qubit_count, {});
    layout.qubit_p_stabs.assign(layout.qubit_count, {});
    for (std::size_t i = 0; i < layout.s_supports.size(); ++i)
        for (int q : layout.s_supports[i]) layout.qubit_s_stabs[q].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < layout.p_supports.size(); ++i)
        for (int q : layout.p_supports[i]) layout.qubit_p_stabs[q].push_back(static_cast<int>(i));

    layout.z_cut_mask = BitVec(layout.qubit_count);
    layout.x_cut_mask = BitVec(layout.qubit_count);
    for (int c = 0; c < size; ++c) {
        layout.z_cut.push_back(layout.qubit_index(0, c));
        layout.z_cut_mask.set(layout.qubit_index(0, c));
    }
    for (int r = 0; r < size; ++r) {
        layout.x_cut.push_back(layout.qubit_index(r, 0));
        layout.x_cut_mask.set(layout.qubit_index(r, 0));
    }
    return layout;
}

ErrorPattern empty_pattern(const PlanarLayout& layout) {
    return ErrorPattern{BitVec(layout.qubit_count), BitVec(layout.qubit_count)};
}

Syndrome syndrome_of(const PlanarLayout& layout, const ErrorPattern& err) {
    Syndrome syn{BitVec(static_cast<int>(layout.s_supports.size())),
                 BitVec(static_cast<int>(layout.p_supports.size()))};
    for (int q = 0; q < layout.qubit_count; ++q) {
        if (err.z_flips.test(q))
            for (int s : layout.qubit_s_stabs[q]) syn.e_defects.toggle(s);
        if (err.x_flips.test(q))
            for (int p : layout.qubit_p_stabs[q]) syn.m_defects.toggle(p);
    }
    return syn;
}

LogicalClass logical_class_of(const PlanarLayout& layout, const ErrorPattern& err) {
    LogicalClass cls;
    cls.e_parity = err.z_flips.overlap_parity(layout.x_cut_mask);
    cls.m_parity = err.x_flips.overlap_parity(layout.z_cut_mask);
    return cls;
}

bool is_equivalent(const PlanarLayout& layout, const ErrorPattern& e1, const ErrorPattern& e2) {
    ErrorPattern diff{e1.x_flips ^ e2.x_flips, e1.z_flips ^ e2.z_flips};
    return syndrome_of(layout, diff).empty() && logical_class_of(layout, diff).trivial();
}

std::string layout_json(const PlanarLayout& layout) {
    nlohmann::json j;
    j["size"] = layout.size;
    j["qubit_count"] = layout.qubit_count;

    auto qubits = nlohmann::json::array();
    for (int q = 0; q < layout.qubit_count; ++q) {
        qubits.push_back({{"index", q}, {"row", q / layout.size}, {"col", q % layout.size}});
    }
    j["qubits"] = qubits;

    auto faces = [](const std::vector<std::vector<int>>& supports,
                    const std::vector<FaceCoord>& coords) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < supports.size(); ++i) {
            arr.push_back({{"row", coords[i].row}, {"col", coords[i].col},
                           {"support", supports[i]}});
        }
        return arr;
    };
    j["s_stabilizers"] = faces(layout.s_supports, layout.s_coords);
    j["p_stabilizers"] = faces(layout.p_supports, layout.p_coords);
    j["z_cut"] = layout.z_cut;
    j["x_cut"] = layout.x_cut;
    j["e_absorbing_boundaries"] = {"left", "right"};
    j["m_absorbing_boundaries"] = {"top", "bottom"};
    return j.dump(2);
}

}  // namespace anyon
