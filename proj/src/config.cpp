#include "tracelab/config.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tracelab/csvio.hpp"

namespace tracelab {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::quasifree_decay: return "quasifree_decay";
        case Scenario::interacting_decay: return "interacting_decay";
        case Scenario::localization: return "localization";
        case Scenario::doubled_checks: return "doubled_checks";
        case Scenario::twist_covariance: return "twist_covariance";
        case Scenario::eigenoperator_scan: return "eigenoperator_scan";
        case Scenario::multitime: return "multitime";
        case Scenario::spectrum: return "spectrum";
    }
    return "?";
}

std::vector<Scenario> all_scenarios() {
    return {Scenario::quasifree_decay, Scenario::interacting_decay,
            Scenario::localization,    Scenario::doubled_checks,
            Scenario::twist_covariance, Scenario::eigenoperator_scan,
            Scenario::multitime,       Scenario::spectrum};
}

FockOperator OperatorSelector::realize(const LatticeSpec& lattice) const {
    if (sites.empty()) throw std::invalid_argument("operator selector: no sites");
    for (int s : sites)
        if (!lattice.contains(s))
            throw std::out_of_range("operator selector: site out of range");
    switch (kind) {
        case OperatorKind::u0: {
            Vector f = Vector::Zero(lattice.L);
            for (int s : sites) f(s) = 1.0;
            f /= f.norm();
            return local_unitary_u0(SmearingVector(f), lattice);
        }
        case OperatorKind::bilinear: {
            if (sites.size() != 2)
                throw std::invalid_argument("bilinear selector needs two sites");
            FockOperator t = jw_creator(sites[0], lattice) *
                             jw_annihilator(sites[1], lattice);
            FockOperator out = t + t.adjoint();
            out.parity = Parity::even;
            return out;
        }
        case OperatorKind::density: {
            FockOperator out = number_operator(sites[0], lattice);
            for (size_t i = 1; i < sites.size(); ++i)
                out = out * number_operator(sites[i], lattice);
            return out;
        }
    }
    throw std::logic_error("unknown operator kind");
}

std::string OperatorSelector::describe() const {
    std::string k = kind == OperatorKind::u0 ? "u0"
                    : kind == OperatorKind::bilinear ? "bilinear"
                                                     : "density";
    std::string out = k + " @ ";
    for (size_t i = 0; i < sites.size(); ++i)
        out += (i ? "," : "") + std::to_string(sites[i]);
    return out;
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> ts;
    if (steps == 1) return {start};
    for (int i = 0; i < steps; ++i)
        ts.push_back(start + (end - start) * i / (steps - 1));
    return ts;
}

namespace {

struct ParserState {
    ScenarioConfig cfg;
    bool boundary_set = false;
};

std::vector<int> parse_int_list(const std::string& s, int line) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            while (pos < item.size() && std::isspace((unsigned char)item[pos])) ++pos;
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (...) {
            throw ConfigError(line, "malformed integer list '" + s + "'");
        }
    }
    if (out.empty()) throw ConfigError(line, "empty site list");
    return out;
}

double parse_real(const std::string& s, int line, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(line, std::string("malformed ") + what + " '" + s + "'");
    }
}

Complex parse_complex(const std::string& s, int line, const char* what) {
    std::stringstream ss(s);
    double re = 0, im = 0;
    if (!(ss >> re)) throw ConfigError(line, std::string("malformed ") + what);
    if (!(ss >> im)) im = 0.0;
    std::string rest;
    if (ss >> rest) throw ConfigError(line, std::string("malformed ") + what);
    return {re, im};
}

int parse_int(const std::string& s, int line, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError(line, std::string("malformed ") + what + " '" + s + "'");
    }
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

OperatorSelector parse_selector(const std::string& value, int line) {
    auto parts = split(value, '@');
    if (parts.size() != 2)
        throw ConfigError(line, "operator selector must be 'kind @ sites'");
    OperatorSelector sel;
    if (parts[0] == "u0") sel.kind = OperatorKind::u0;
    else if (parts[0] == "bilinear") sel.kind = OperatorKind::bilinear;
    else if (parts[0] == "density") sel.kind = OperatorKind::density;
    else throw ConfigError(line, "unknown operator kind '" + parts[0] + "'");
    sel.sites = parse_int_list(parts[1], line);
    return sel;
}

void apply_key(ParserState& st, const std::string& section, const std::string& key,
               const std::string& value, int line) {
    ScenarioConfig& cfg = st.cfg;
    if (section == "scenario") {
        if (key == "name") {
            for (Scenario s : all_scenarios())
                if (value == scenario_name(s)) {
                    cfg.scenario = s;
                    return;
                }
            throw ConfigError(line, "unknown scenario '" + value + "'");
        }
        if (key == "out") { cfg.out_dir = value; return; }
        if (key == "threads") {
            cfg.threads = parse_int(value, line, "threads");
            if (cfg.threads < 1) throw ConfigError(line, "threads must be >= 1");
            return;
        }
    } else if (section == "lattice") {
        if (key == "L") {
            int L = parse_int(value, line, "L");
            if (L < 1) throw ConfigError(line, "L must be >= 1");
            Boundary b = cfg.hamiltonian.lattice.boundary;
            cfg.hamiltonian.lattice = LatticeSpec(L, b);
            return;
        }
        if (key == "boundary") {
            if (value == "periodic") cfg.hamiltonian.lattice.boundary = Boundary::periodic;
            else if (value == "open") cfg.hamiltonian.lattice.boundary = Boundary::open;
            else throw ConfigError(line, "boundary must be periodic or open");
            st.boundary_set = true;
            return;
        }
    } else if (section == "kernel") {
        if (key == "term") {
            auto parts = split(value, ':');
            if (parts.size() != 2)
                throw ConfigError(line, "kernel term must be 'displacement : value'");
            int d = parse_int(parts[0], line, "displacement");
            cfg.hamiltonian.kernel.entries[d] = parse_complex(parts[1], line, "amplitude");
            return;
        }
    } else if (section == "interaction") {
        if (key == "term") {
            auto parts = split(value, ';');
            if (parts.size() != 3)
                throw ConfigError(line,
                                  "interaction term must be 'creators ; annihilators ; coefficient'");
            InteractionTerm t;
            t.creators = parse_int_list(parts[0], line);
            t.annihilators = parse_int_list(parts[1], line);
            t.coefficient = parse_complex(parts[2], line, "coefficient");
            cfg.hamiltonian.interactions.push_back(std::move(t));
            return;
        }
    } else if (section == "gge") {
        if (key == "term") {
            auto parts = split(value, ';');
            if (parts.size() != 2)
                throw ConfigError(line, "gge term must be 'sites ; coefficient'");
            GgeTerm t;
            t.sites = parse_int_list(parts[0], line);
            t.coefficient = parse_real(parts[1], line, "coefficient");
            cfg.hamiltonian.gge_terms.push_back(std::move(t));
            return;
        }
    } else if (section == "operators") {
        if (key == "A") { cfg.op_a = parse_selector(value, line); return; }
        if (key == "B") { cfg.op_b = parse_selector(value, line); return; }
    } else if (section == "time") {
        if (key == "start") { cfg.time.start = parse_real(value, line, "start"); return; }
        if (key == "end") { cfg.time.end = parse_real(value, line, "end"); return; }
        if (key == "steps") {
            cfg.time.steps = parse_int(value, line, "steps");
            if (cfg.time.steps < 1) throw ConfigError(line, "steps must be >= 1");
            return;
        }
    } else if (section == "diagnostics") {
        if (key == "norm") {
            if (value == "spectral") cfg.norm = NormKind::spectral;
            else if (value == "frobenius") cfg.norm = NormKind::frobenius;
            else throw ConfigError(line, "norm must be spectral or frobenius");
            return;
        }
        if (key == "epsilon") {
            cfg.epsilon = parse_real(value, line, "epsilon");
            if (cfg.epsilon <= 0 || cfg.epsilon >= 1)
                throw ConfigError(line, "epsilon must be in (0,1)");
            return;
        }
    } else if (section == "twist") {
        if (key == "k") { cfg.twist_quantum = parse_int(value, line, "k"); return; }
    } else {
        throw ConfigError(line, "unknown section [" + section + "]");
    }
    throw ConfigError(line, "unknown key '" + key + "' in section [" + section + "]");
}

void finalize(ParserState& st) {
    ScenarioConfig& cfg = st.cfg;
    const LatticeSpec& lat = cfg.hamiltonian.lattice;
    if (cfg.op_a.sites.empty()) cfg.op_a = {OperatorKind::u0, {0}};
    if (cfg.op_b.sites.empty()) cfg.op_b = {OperatorKind::u0, {lat.L / 2}};
    validate_interactions(cfg.hamiltonian.interactions, lat);
    // A displacement given without its opposite gets the hermitian partner.
    auto& entries = cfg.hamiltonian.kernel.entries;
    for (const auto& [d, v] : std::map<int, Complex>(entries))
        if (!entries.count(-d)) entries[-d] = std::conj(v);
    cfg.hamiltonian.kernel.validate();
}

ScenarioConfig parse_json_config(const std::string& text) {
    ParserState st;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(1, std::string("json: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError(1, "json config must be an object");
    auto as_string = [](const nlohmann::json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long>());
        if (v.is_number_float()) return format_double(v.get<double>());
        throw std::invalid_argument("unsupported json value type");
    };
    for (auto& [section, body] : doc.items()) {
        if (!body.is_object())
            throw ConfigError(1, "json section '" + section + "' must be an object");
        for (auto& [key, value] : body.items()) {
            if (value.is_array())
                for (auto& item : value) apply_key(st, section, key, as_string(item), 1);
            else
                apply_key(st, section, key, as_string(value), 1);
        }
    }
    finalize(st);
    return st.cfg;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    // JSON alternative encoding with identical semantics.
    for (char c : text) {
        if (std::isspace((unsigned char)c)) continue;
        if (c == '{') return parse_json_config(text);
        break;
    }
    ParserState st;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known{
                "scenario", "lattice",     "kernel", "interaction", "gge",
                "operators", "time", "diagnostics", "twist"};
            if (!known.count(section))
                throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(line_no, "key outside any [section]");
        apply_key(st, section, key, value, line_no);
    }
    finalize(st);
    return st.cfg;
}

ScenarioConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

std::string ScenarioConfig::canonical_text() const {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << scenario_name(scenario) << "\n";
    out << "out = " << out_dir << "\n";
    out << "threads = " << threads << "\n";
    out << "[lattice]\n";
    out << "L = " << hamiltonian.lattice.L << "\n";
    out << "boundary = "
        << (hamiltonian.lattice.boundary == Boundary::periodic ? "periodic" : "open")
        << "\n";
    if (!hamiltonian.kernel.empty()) {
        out << "[kernel]\n";
        for (const auto& [d, v] : hamiltonian.kernel.entries)
            out << "term = " << d << " : " << format_complex(v) << "\n";
    }
    if (!hamiltonian.interactions.empty()) {
        out << "[interaction]\n";
        for (const auto& t : hamiltonian.interactions) {
            out << "term = ";
            for (size_t i = 0; i < t.creators.size(); ++i)
                out << (i ? "," : "") << t.creators[i];
            out << " ; ";
            for (size_t i = 0; i < t.annihilators.size(); ++i)
                out << (i ? "," : "") << t.annihilators[i];
            out << " ; " << format_complex(t.coefficient) << "\n";
        }
    }
    if (!hamiltonian.gge_terms.empty()) {
        out << "[gge]\n";
        for (const auto& t : hamiltonian.gge_terms) {
            out << "term = ";
            for (size_t i = 0; i < t.sites.size(); ++i) out << (i ? "," : "") << t.sites[i];
            out << " ; " << format_double(t.coefficient) << "\n";
        }
    }
    out << "[operators]\n";
    out << "A = " << op_a.describe() << "\n";
    out << "B = " << op_b.describe() << "\n";
    out << "[time]\n";
    out << "start = " << format_double(time.start) << "\n";
    out << "end = " << format_double(time.end) << "\n";
    out << "steps = " << time.steps << "\n";
    out << "[diagnostics]\n";
    out << "norm = " << (norm == NormKind::spectral ? "spectral" : "frobenius") << "\n";
    out << "epsilon = " << format_double(epsilon) << "\n";
    out << "[twist]\n";
    out << "k = " << twist_quantum << "\n";
    return out.str();
}

} // namespace tracelab
