#include "wv/dsl.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wv/parse.hpp"

namespace wv {

namespace {

std::vector<std::string> tokenize_line(const std::string& line, int lineno) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (c == '"') {
            std::size_t end = line.find('"', i + 1);
            if (end == std::string::npos)
                throw ParseError("unterminated string in metric file line " +
                                     std::to_string(lineno),
                                 i);
            out.push_back(line.substr(i + 1, end - i - 1));
            i = end + 1;
        } else {
            std::size_t end = i;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
                   line[end] != '#')
                ++end;
            out.push_back(line.substr(i, end - i));
            i = end;
        }
    }
    return out;
}

double parse_double(const std::string& s, int lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "' in metric file line " + std::to_string(lineno),
                         0);
    }
}

std::string quote(const Expr& e) { return '"' + to_string(e) + '"'; }

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

DslMetric read_dsl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    Chart chart;
    bool have_chart = false;
    std::string h11 = "0", h12 = "0", h22 = "0", a1 = "0", a2 = "0", h0 = "0", h1 = "0";
    bool have_h11 = false, have_h22 = false, have_h0 = false;
    DomainBox box;
    std::vector<Constraint> constraints;
    struct RawField {
        std::string label;
        std::string comp[4];
    };
    std::vector<RawField> fields;
    double default_lambda = -1.0;
    bool has_default = false;

    std::vector<std::string> pending_constraints_srcs;

    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokenize_line(line, lineno);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        auto need = [&](std::size_t n) {
            if (tok.size() != n)
                throw ParseError("wrong field count for '" + key + "' in line " +
                                     std::to_string(lineno),
                                 0);
        };
        if (key == "chart") {
            need(5);
            chart.coords = {tok[1], tok[2], tok[3], tok[4]};
            have_chart = true;
        } else if (key == "params") {
            for (std::size_t i = 1; i < tok.size(); ++i) chart.params.push_back(tok[i]);
        } else if (key == "default") {
            need(3);
            if (tok[1] != "Lambda")
                throw ParseError("only 'default Lambda <value>' is supported (line " +
                                     std::to_string(lineno) + ")",
                                 0);
            default_lambda = parse_double(tok[2], lineno);
            has_default = true;
        } else if (key == "h") {
            need(3);
            if (tok[1] == "11") {
                h11 = tok[2];
                have_h11 = true;
            } else if (tok[1] == "12") {
                h12 = tok[2];
            } else if (tok[1] == "22") {
                h22 = tok[2];
                have_h22 = true;
            } else {
                throw ParseError("h index must be 11, 12 or 22 (line " +
                                     std::to_string(lineno) + ")",
                                 0);
            }
        } else if (key == "A") {
            need(3);
            if (tok[1] == "1")
                a1 = tok[2];
            else if (tok[1] == "2")
                a2 = tok[2];
            else
                throw ParseError("A index must be 1 or 2 (line " + std::to_string(lineno) + ")",
                                 0);
        } else if (key == "H0") {
            need(2);
            h0 = tok[1];
            have_h0 = true;
        } else if (key == "H1") {
            need(2);
            h1 = tok[1];
        } else if (key == "domain") {
            need(4);
            box.set(tok[1], parse_double(tok[2], lineno), parse_double(tok[3], lineno));
        } else if (key == "constraint") {
            if (tok.size() != 4 && tok.size() != 5)
                throw ParseError("constraint needs: name \"expr\" margin [abs] (line " +
                                     std::to_string(lineno) + ")",
                                 0);
            Constraint c;
            c.name = tok[1];
            c.margin = parse_double(tok[3], lineno);
            c.absolute = tok.size() == 5 && tok[4] == "abs";
            constraints.push_back(c);
            pending_constraints_srcs.push_back(tok[2]);
        } else if (key == "killing") {
            need(6);
            RawField f;
            f.label = tok[1];
            for (int i = 0; i < 4; ++i) f.comp[i] = tok[i + 2];
            fields.push_back(f);
        } else {
            throw ParseError("unknown key '" + key + "' in metric file line " +
                                 std::to_string(lineno),
                             0);
        }
    }

    if (!have_chart) throw ParseError("metric file has no 'chart' line", 0);
    if (chart.coords != std::vector<std::string>{"v", "x", "y", "u"})
        throw ParseError("chart must be 'chart v x y u'", 0);
    if (!have_h11 || !have_h22 || !have_h0)
        throw ParseError("metric file needs h 11, h 22 and H0 entries", 0);
    chart.box = box;
    NameSet names = chart.names();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        constraints[i].expr = parse(pending_constraints_srcs[i], names);
        chart.box.constraints.push_back(constraints[i]);
    }

    DslMetric out;
    out.metric = walker_einstein(chart, parse(h11, names), parse(h12, names), parse(h22, names),
                                 parse(a1, names), parse(a2, names), parse(h0, names),
                                 parse(h1, names));
    out.default_lambda = default_lambda;
    out.has_default_lambda = has_default;
    for (const auto& f : fields) {
        VectorField k;
        k.label = f.label;
        for (int i = 0; i < 4; ++i) k.comp.push_back(parse(f.comp[i], names));
        out.killing_fields.push_back(std::move(k));
    }
    return out;
}

DslMetric load_dsl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open metric file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_dsl(ss.str());
}

std::string write_dsl(const WalkerMetric& metric, double default_lambda,
                      const std::vector<VectorField>& killing_fields) {
    if (!metric.has_ansatz())
        throw Error("only metrics with the H = Lambda v^2 + H1 v + H0 split are exportable");
    std::ostringstream out;
    out << "# walker metric definition\n";
    out << "chart v x y u\n";
    if (!metric.chart.params.empty()) {
        out << "params";
        for (const auto& p : metric.chart.params) out << ' ' << p;
        out << "\n";
    }
    out << "default Lambda " << format_num(default_lambda) << "\n";
    out << "h 11 " << quote(metric.h11) << "\n";
    out << "h 12 " << quote(metric.h12) << "\n";
    out << "h 22 " << quote(metric.h22) << "\n";
    out << "A 1 " << quote(metric.A1) << "\n";
    out << "A 2 " << quote(metric.A2) << "\n";
    out << "H0 " << quote(*metric.H0) << "\n";
    out << "H1 " << quote(*metric.H1) << "\n";
    for (const auto& [name, iv] : metric.chart.box.intervals)
        out << "domain " << name << ' ' << format_num(iv.lo) << ' ' << format_num(iv.hi) << "\n";
    for (const auto& c : metric.chart.box.constraints) {
        out << "constraint " << c.name << ' ' << quote(c.expr) << ' ' << format_num(c.margin);
        if (c.absolute) out << " abs";
        out << "\n";
    }
    for (const auto& k : killing_fields) {
        std::string label = k.label;
        for (char& ch : label)
            if (std::isspace(static_cast<unsigned char>(ch))) ch = '_';
        out << "killing " << label;
        for (const auto& comp : k.comp) out << ' ' << quote(comp);
        out << "\n";
    }
    return out.str();
}

} // namespace wv
