#include "leleec/ilp_model.hpp"

#include <cctype>
#include <sstream>

namespace leleec {

namespace {

std::string row_name(std::size_t index, const std::string& label) {
    std::string out = "r" + std::to_string(index);
    if (!label.empty()) out += '_';
    for (char ch : label) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return out;
}

std::string coefficient(const Rational& r) {
    const auto text = format_rational(r);
    if (text.find('/') == std::string::npos) return text;
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    return os.str();
}

void write_term(std::ostream& os, std::int64_t coef, const std::string& name) {
    os << (coef < 0 ? " - " : " + ");
    os << (coef < 0 ? -coef : coef) << ' ' << name;
}

}  // namespace

std::string export_lp(const IlpModel& model) {
    const auto& vars = model.variables();
    std::ostringstream os;
    os << "\\ " << vars.size() << " binary variables, " << model.constraints().size() << " constraints\n";
    os << "Minimize\n obj:";
    bool any = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const Rational& c = model.objective()[i];
        if (c == 0) continue;
        os << (c < 0 ? " - " : " + ") << coefficient(c < 0 ? -c : c) << ' ' << vars[i].name;
        any = true;
    }
    if (!any && !vars.empty()) os << " 0 " << vars.front().name;
    os << "\nSubject To\n";
    for (std::size_t r = 0; r < model.constraints().size(); ++r) {
        const auto& row = model.constraints()[r];
        if (row.terms.empty() && vars.empty()) continue;
        os << ' ' << row_name(r, row.label) << ':';
        if (row.terms.empty()) os << " 0 " << vars.front().name;
        for (const auto& t : row.terms) write_term(os, t.coef, vars[t.var].name);
        os << " <= " << row.rhs << '\n';
    }
    os << "Binary\n";
    for (const auto& v : vars) os << ' ' << v.name << '\n';
    os << "End\n";
    return os.str();
}

}  // namespace leleec
