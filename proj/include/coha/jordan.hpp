#pragma once

// Jordan types of nilpotent Higgs sheaves: the staircase encoding of the
// kernel filtration of a nilpotent Higgs field, row and kernel classes, the
// dominance-style partial order, bounded enumeration, and diagram rendering.

#include "coha/ktheory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coha {

// (alpha_1, ..., alpha_s): alpha_i is the class of the i-blocks of the
// filtration. Interior entries may be (0,0) (no blocks of that size); the top
// entry must be nonzero so that s is the genuine nilpotency index.
class JordanType {
public:
    static JordanType make(std::vector<NumClass> entries);

    const std::vector<NumClass>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    const NumClass& entry(std::size_t i) const { return entries_.at(i); }

    bool operator==(const JordanType& o) const { return entries_ == o.entries_; }
    bool operator!=(const JordanType& o) const { return !(*this == o); }
    bool operator<(const JordanType& o) const { return entries_ < o.entries_; }

    std::string str() const;

private:
    explicit JordanType(std::vector<NumClass> e) : entries_(std::move(e)) {}
    std::vector<NumClass> entries_;
};

using RowClasses = std::vector<NumClass>;

// Class of the whole sheaf: sum over entries of their staircase column,
// alpha = sum_i sum_{k=0..i-1} alpha_i(-k l).
NumClass total_class(const JordanType& t, const CurveModel& m);

// gamma_i = sum_{j>=i} alpha_j((i-j) l): total class of row i of the diagram,
// also the class of ker(theta^i)/ker(theta^{i-1}).
RowClasses row_classes(const JordanType& t, const CurveModel& m);

// Inverse of row_classes by downward induction; reports the first entry that
// fails positivity (or a zero top entry) instead of throwing.
struct RowsDecode {
    std::optional<JordanType> type;
    long first_invalid = -1; // 1-based index of the first bad entry, -1 if ok
    bool ok() const { return type.has_value(); }
};
RowsDecode rows_to_type(const RowClasses& rows, const CurveModel& m);

// Class of ker(theta^k) = sum of the first min(k, s) row classes.
NumClass kernel_class(const JordanType& t, long long k, const CurveModel& m);

// b precedes a iff kernel_class(a,k) <= kernel_class(b,k) for every k
// (standard order on classes); false when the total classes differ.
bool preceq(const JordanType& b, const JordanType& a, const CurveModel& m);

// All Jordan types of class (0,d); in bijection with integer partitions of d
// (entry i records the multiplicity of part i). Canonical order throughout:
// by (length, entry sequence).
std::vector<JordanType> enumerate_rank0(long long d);

// All Jordan types of class a with length <= max_len, searching entry degrees
// d_1..d_{s-1} in [-degree_window, degree_window] and solving the last degree
// from the class equation (so the length-1 type is always found). Complete
// only relative to these bounds. Rank-0 input delegates to enumerate_rank0
// (exact, window-independent).
std::vector<JordanType> enumerate_bounded(const NumClass& a, long long max_len,
                                          long long degree_window, const CurveModel& m);

// All b preceding a found within the enumeration bounds; exact for rank 0.
std::vector<JordanType> downset(const JordanType& a, long long degree_window,
                                const CurveModel& m);

// Box (row i from the bottom, source entry j>=i) of the colored Young
// diagram, labelled alpha_j((i-j) l).
struct YoungBox {
    std::size_t source = 0;     // j, 1-based
    long long omega_power = 0;  // i - j
    NumClass value;
};
// rows[0] is the top row (i = s), rows.back() the bottom row (i = 1); boxes
// left to right with j descending.
std::vector<std::vector<YoungBox>> young_boxes(const JordanType& t, const CurveModel& m);

std::string render_young_text(const JordanType& t, const CurveModel& m);
std::string render_young_tex(const JordanType& t, const CurveModel& m);

// Relative dimension of the vector bundle stack morphism from the stratum to
// the product of coherent-sheaf stacks: -<a,a> + sum_i <a_i,a_i>.
Int vb_stack_rank(const JordanType& t, const CurveModel& m);

// Dimension of the iterated induction correspondence over the row classes:
// -2 sum_{i != j} <g_i, g_j>.
Int correspondence_dim(const RowClasses& rows, const CurveModel& m);

// Helpers shared with the CLI.
NumClass parse_num_class(const std::string& text, const std::string& arg_name);
JordanType parse_jordan_type(const std::string& text, const std::string& arg_name);
RowClasses parse_row_classes(const std::string& text, const std::string& arg_name);

} // namespace coha
