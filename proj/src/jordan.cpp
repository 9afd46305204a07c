#include "coha/jordan.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace coha {

JordanType JordanType::make(std::vector<NumClass> entries) {
    if (entries.empty()) throw std::invalid_argument("Jordan type must have length >= 1");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!is_positive(entries[i]))
            throw std::invalid_argument("Jordan type entry " + std::to_string(i + 1) +
                                        " is not a positive class");
    }
    if (entries.back().is_zero())
        throw std::invalid_argument("top Jordan type entry must be nonzero");
    return JordanType(std::move(entries));
}

std::string JordanType::str() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ";";
        s += entries_[i].str();
    }
    return s;
}

NumClass total_class(const JordanType& t, const CurveModel& m) {
    const Int l = m.canonical_degree();
    NumClass total;
    for (std::size_t i = 1; i <= t.length(); ++i) {
        const NumClass& a = t.entry(i - 1);
        // sum_{k=0..i-1} a(-k l) = (i r, i d - l r i(i-1)/2)
        Int i_int(i);
        total += NumClass(i_int * a.rank,
                          i_int * a.deg - l * a.rank * (i_int * (i_int - 1) / 2));
    }
    return total;
}

RowClasses row_classes(const JordanType& t, const CurveModel& m) {
    const Int l = m.canonical_degree();
    const std::size_t s = t.length();
    RowClasses rows(s);
    for (std::size_t i = 1; i <= s; ++i) {
        NumClass g;
        for (std::size_t j = i; j <= s; ++j)
            g += twist(t.entry(j - 1), Int((long long)i - (long long)j) * l);
        rows[i - 1] = g;
    }
    return rows;
}

RowsDecode rows_to_type(const RowClasses& rows, const CurveModel& m) {
    const Int l = m.canonical_degree();
    const std::size_t s = rows.size();
    RowsDecode out;
    if (s == 0) { out.first_invalid = 0; return out; }
    std::vector<NumClass> entries(s);
    // alpha_s = gamma_s, then alpha_i = gamma_i - sum_{j>i} alpha_j((i-j)l).
    for (std::size_t ii = s; ii >= 1; --ii) {
        NumClass a = rows[ii - 1];
        for (std::size_t j = ii + 1; j <= s; ++j)
            a = a - twist(entries[j - 1], Int((long long)ii - (long long)j) * l);
        if (!is_positive(a)) { out.first_invalid = (long)ii; return out; }
        entries[ii - 1] = a;
    }
    if (entries.back().is_zero()) { out.first_invalid = (long)s; return out; }
    out.type = JordanType::make(std::move(entries));
    return out;
}

NumClass kernel_class(const JordanType& t, long long k, const CurveModel& m) {
    if (k < 1) throw std::invalid_argument("kernel power must be >= 1");
    RowClasses rows = row_classes(t, m);
    NumClass sum;
    const long long kk = std::min<long long>(k, (long long)rows.size());
    for (long long i = 0; i < kk; ++i) sum += rows[i];
    return sum;
}

bool preceq(const JordanType& b, const JordanType& a, const CurveModel& m) {
    if (total_class(b, m) != total_class(a, m)) return false;
    const long long kmax = (long long)std::max(a.length(), b.length());
    // Both kernel sequences are constant beyond the larger length.
    for (long long k = 1; k <= kmax; ++k)
        if (!leq_standard(kernel_class(a, k, m), kernel_class(b, k, m))) return false;
    return true;
}

namespace {

void sort_canonical(std::vector<JordanType>& v) {
    std::sort(v.begin(), v.end(), [](const JordanType& x, const JordanType& y) {
        if (x.length() != y.length()) return x.length() < y.length();
        return x.entries() < y.entries();
    });
}

} // namespace

std::vector<JordanType> enumerate_rank0(long long d) {
    if (d < 0) throw std::invalid_argument("rank-0 enumeration needs d >= 0");
    std::vector<JordanType> out;
    if (d == 0) return out; // no valid type: length >= 1 with nonzero top entry
    // multiplicities (m_1..m_s), sum i*m_i = d, m_s >= 1
    std::vector<long long> mult;
    auto emit = [&](std::size_t s) {
        std::vector<NumClass> entries(s);
        for (std::size_t i = 0; i < s; ++i) entries[i] = NumClass(0, mult[i]);
        out.push_back(JordanType::make(std::move(entries)));
    };
    std::function<void(long long, long long)> rec = [&](long long part, long long rem) {
        if (rem == 0) {
            std::size_t s = mult.size();
            while (s > 0 && mult[s - 1] == 0) --s;
            if (s > 0) { auto save = mult; mult.resize(s); emit(s); mult = save; }
            return;
        }
        if (part > rem) return;
        for (long long cnt = 0; cnt * part <= rem; ++cnt) {
            mult.push_back(cnt);
            rec(part + 1, rem - cnt * part);
            mult.pop_back();
        }
    };
    rec(1, d);
    sort_canonical(out);
    return out;
}

namespace {

// Enumerate entry degrees for a fixed rank vector. The degrees d_1..d_{s-1}
// range over the window; d_s is solved from the class equation.
void enumerate_degrees(const std::vector<Int>& ranks, const NumClass& target,
                       long long window, const Int& l,
                       std::vector<JordanType>& out) {
    const std::size_t s = ranks.size();
    // target.deg = sum_i (i d_i - l r_i i(i-1)/2)
    Int deg_needed = target.deg;
    for (std::size_t i = 1; i <= s; ++i)
        deg_needed += l * ranks[i - 1] * (Int(i) * Int((long long)i - 1) / 2);
    // now deg_needed = sum_i i d_i
    std::vector<Int> degs(s);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int rem) {
        if (i == s) {
            // solve s * d_s = rem
            if (rem % Int(s) != 0) return;
            Int ds = rem / Int(s);
            if (ranks[s - 1] == 0 && ds < 0) return;
            if (ranks[s - 1] == 0 && ds == 0) return; // top entry nonzero
            degs[s - 1] = ds;
            std::vector<NumClass> entries(s);
            for (std::size_t j = 0; j < s; ++j) entries[j] = NumClass(ranks[j], degs[j]);
            out.push_back(JordanType::make(std::move(entries)));
            return;
        }
        const long long lo = (ranks[i - 1] == 0) ? 0 : -window;
        for (long long dd = lo; dd <= window; ++dd) {
            degs[i - 1] = dd;
            rec(i + 1, rem - Int(i) * Int(dd));
        }
    };
    rec(1, deg_needed);
}

} // namespace

std::vector<JordanType> enumerate_bounded(const NumClass& a, long long max_len,
                                          long long degree_window, const CurveModel& m) {
    if (!is_positive(a)) throw std::invalid_argument("class must be positive");
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    if (degree_window < 0) throw std::invalid_argument("degree_window must be >= 0");
    if (a.rank == 0) {
        // exact; the window plays no role
        std::vector<JordanType> all = enumerate_rank0((long long)a.deg);
        std::vector<JordanType> out;
        for (auto& t : all)
            if ((long long)t.length() <= max_len) out.push_back(t);
        return out;
    }
    const Int l = m.canonical_degree();
    std::vector<JordanType> out;
    for (long long s = 1; s <= max_len; ++s) {
        // rank vectors r_i >= 0 with sum i r_i = rank(a)
        std::vector<Int> ranks((std::size_t)s);
        std::function<void(long long, Int)> rec = [&](long long i, Int rem) {
            if (i == s) {
                if (rem % Int(s) != 0) return;
                ranks[(std::size_t)s - 1] = rem / Int(s);
                enumerate_degrees(ranks, a, degree_window, l, out);
                return;
            }
            for (Int r = 0; Int(i) * r <= rem; ++r) {
                ranks[(std::size_t)i - 1] = r;
                rec(i + 1, rem - Int(i) * r);
            }
        };
        rec(1, a.rank);
    }
    sort_canonical(out);
    return out;
}

std::vector<JordanType> downset(const JordanType& a, long long degree_window,
                                const CurveModel& m) {
    const NumClass total = total_class(a, m);
    std::vector<JordanType> candidates;
    if (total.rank == 0) {
        candidates = enumerate_rank0((long long)total.deg);
    } else {
        // b preceding a forces len(b) <= len(a)
        candidates = enumerate_bounded(total, (long long)a.length(), degree_window, m);
    }
    std::vector<JordanType> out;
    for (auto& b : candidates)
        if (preceq(b, a, m)) out.push_back(b);
    return out;
}

std::vector<std::vector<YoungBox>> young_boxes(const JordanType& t, const CurveModel& m) {
    const Int l = m.canonical_degree();
    const std::size_t s = t.length();
    std::vector<std::vector<YoungBox>> rows;
    for (std::size_t i = s; i >= 1; --i) { // top row first
        std::vector<YoungBox> row;
        for (std::size_t j = s; j >= i; --j) {
            YoungBox box;
            box.source = j;
            box.omega_power = (long long)i - (long long)j;
            box.value = twist(t.entry(j - 1), Int(box.omega_power) * l);
            row.push_back(box);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_young_text(const JordanType& t, const CurveModel& m) {
    auto rows = young_boxes(t, m);
    const std::size_t s = t.length();
    // column widths: column c holds boxes with source j = s - c
    std::vector<std::size_t> width(s, 0);
    auto label = [](const YoungBox& b) { return "(" + b.value.str() + ")"; };
    for (auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], label(row[c]).size());
    std::string out;
    for (auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string cell = label(row[c]);
            cell.resize(width[c], ' ');
            if (c) line += " ";
            line += cell;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += "\n";
    }
    return out;
}

std::string render_young_tex(const JordanType& t, const CurveModel& m) {
    auto rows = young_boxes(t, m);
    std::string out = "\\begin{ytableau}\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) line += " & ";
            line += "\\scriptstyle{(" + rows[r][c].value.str() + ")}";
        }
        out += line;
        if (r + 1 < rows.size()) out += " \\\\";
        out += "\n";
    }
    out += "\\end{ytableau}\n";
    return out;
}

Int vb_stack_rank(const JordanType& t, const CurveModel& m) {
    const NumClass a = total_class(t, m);
    Int r = -euler_coh(a, a, m);
    for (const auto& ai : t.entries()) r += euler_coh(ai, ai, m);
    return r;
}

Int correspondence_dim(const RowClasses& rows, const CurveModel& m) {
    Int sum = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (i != j) sum += euler_coh(rows[i], rows[j], m);
    return Int(-2) * sum;
}

NumClass parse_num_class(const std::string& text, const std::string& arg_name) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument(arg_name + ": expected class literal \"r,d\", got \"" + text + "\"");
    try {
        Int r(text.substr(0, comma));
        Int d(text.substr(comma + 1));
        return {r, d};
    } catch (const std::exception&) {
        throw std::invalid_argument(arg_name + ": malformed class literal \"" + text + "\"");
    }
}

static std::vector<NumClass> parse_class_list(const std::string& text, const std::string& arg_name) {
    std::vector<NumClass> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        entries.push_back(parse_num_class(item, arg_name));
    if (entries.empty())
        throw std::invalid_argument(arg_name + ": empty class list");
    return entries;
}

JordanType parse_jordan_type(const std::string& text, const std::string& arg_name) {
    try {
        return JordanType::make(parse_class_list(text, arg_name));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(arg_name + ": " + e.what());
    }
}

RowClasses parse_row_classes(const std::string& text, const std::string& arg_name) {
    return parse_class_list(text, arg_name);
}

} // namespace coha
