#include "amenent/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace amenent {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ConfigError("empty rational literal");
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal: digits / 10^k
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        try {
            mpz_class num(digits, 10);
            mpz_class den(1);
            for (std::size_t i = 0; i < frac; ++i) den *= 10;
            Rational q(num, den);
            q.canonicalize();
            return q;
        } catch (const std::exception&) {
            throw ConfigError("bad rational literal '" + text + "'");
        }
    }
    try {
        Rational q(s, 10);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ConfigError("bad rational literal '" + text + "'");
    }
}

std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

namespace {

Rational rational_from_json(const ordered_json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_number_float()) {
        Rational q(j.get<double>()); // exact binary expansion
        q.canonicalize();
        return q;
    }
    throw ConfigError("expected a rational (string or number)");
}

std::vector<Rational> rational_vector(const ordered_json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigError(what + " must be an array");
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

} // namespace

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    try {
        return ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

GroupSpec group_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("group must be an object");
    GroupSpec spec;
    spec.free_rank = j.value("free_rank", 0);
    if (j.contains("finite_moduli"))
        for (const auto& m : j.at("finite_moduli")) spec.finite_moduli.push_back(m.get<long long>());
    if (j.contains("trivial_mask"))
        for (const auto& b : j.at("trivial_mask")) spec.trivial_mask.push_back(b.get<bool>());
    else
        spec.trivial_mask.assign(static_cast<std::size_t>(spec.rank()), false);
    spec.validate();
    bool any_effective = false;
    for (bool b : spec.trivial_mask) any_effective |= !b;
    if (!any_effective && spec.rank() > 0)
        throw ConfigError("at least one coordinate must act non-trivially");
    return spec;
}

SystemSpec system_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("system must be an object");
    GroupSpec spec = group_from_json(j.at("group"));
    std::vector<std::string> alphabet;
    for (const auto& s : j.at("alphabet")) alphabet.push_back(s.get<std::string>());
    SystemSpec probe(spec, alphabet, {});
    std::vector<Pattern> forbidden;
    if (j.contains("forbidden")) {
        const GroupSpec eff = spec.effective();
        for (const auto& f : j.at("forbidden")) {
            Pattern p;
            std::vector<std::pair<GroupElement, int>> sites;
            const auto& win = f.at("window");
            const auto& syms = f.at("symbols");
            if (win.size() != syms.size())
                throw ConfigError("forbidden pattern window/symbols length mismatch");
            for (std::size_t i = 0; i < win.size(); ++i) {
                GroupElement e = reduce(eff, win[i].get<std::vector<long long>>());
                int s = probe.symbol_index(syms[i].get<std::string>());
                if (s < 0)
                    throw ConfigError("forbidden pattern uses unknown symbol '" +
                                      syms[i].get<std::string>() + "'");
                sites.emplace_back(std::move(e), s);
            }
            std::sort(sites.begin(), sites.end());
            for (std::size_t i = 1; i < sites.size(); ++i)
                if (sites[i].first == sites[i - 1].first)
                    throw ConfigError("forbidden pattern window has duplicate coordinates");
            std::vector<GroupElement> win_sorted;
            for (auto& [e, s] : sites) {
                win_sorted.push_back(e);
                p.symbols.push_back(s);
            }
            p.window = FiniteSubset{std::move(win_sorted)};
            forbidden.push_back(std::move(p));
        }
    }
    SystemSpec out(std::move(spec), std::move(alphabet), std::move(forbidden));
    out.validate();
    return out;
}

FiniteSubset subset_from_json(const ordered_json& j, const GroupSpec& spec) {
    if (!j.is_array()) throw ConfigError("subset must be an array of coordinate vectors");
    std::vector<GroupElement> elems;
    for (const auto& c : j) elems.push_back(reduce(spec, c.get<std::vector<long long>>()));
    return FiniteSubset::of(spec, std::move(elems));
}

Cover cover_from_json(const ordered_json& j, const SystemSpec& system,
                      const EnumerationCaps& caps) {
    if (!j.is_object()) throw ConfigError("cover must be an object");
    const GroupSpec& eff = system.effective_group();
    std::vector<GroupElement> listed;
    for (const auto& c : j.at("window")) listed.push_back(reduce(eff, c.get<std::vector<long long>>()));
    std::vector<std::pair<GroupElement, int>> order;
    for (std::size_t i = 0; i < listed.size(); ++i) order.emplace_back(listed[i], static_cast<int>(i));
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i].first == order[i - 1].first)
            throw ConfigError("cover window has duplicate coordinates");

    Cover out;
    {
        std::vector<GroupElement> win;
        for (auto& [e, _] : order) win.push_back(e);
        out.window = FiniteSubset{std::move(win)};
    }
    out.is_partition = j.value("partition", false);
    for (const auto& cell : j.at("cells")) {
        std::vector<SymbolRow> rows;
        for (const auto& pat : cell) {
            if (pat.size() != listed.size())
                throw ConfigError("pattern length does not match the cover window");
            SymbolRow row(listed.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                int s = system.symbol_index(pat[static_cast<std::size_t>(order[i].second)].get<std::string>());
                if (s < 0) throw ConfigError("pattern uses a symbol outside the alphabet");
                row[i] = s;
            }
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        out.cells.push_back(std::move(rows));
    }
    validate_cover(system, out, caps);
    return out;
}

MeasureSpec measure_from_json(const ordered_json& j, const SystemSpec& system) {
    if (!j.is_object()) throw ConfigError("measure must be an object");
    MeasureSpec mu;
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "bernoulli") {
        mu.kind = MeasureSpec::Kind::bernoulli;
        mu.bernoulli_p = rational_vector(j.at("probs"), "bernoulli probs");
    } else if (variant == "markov_z") {
        mu.kind = MeasureSpec::Kind::markov_z;
        for (const auto& row : j.at("transition"))
            mu.transition.push_back(rational_vector(row, "transition row"));
        mu.stationary = rational_vector(j.at("stationary"), "stationary vector");
    } else if (variant == "finite_group") {
        mu.kind = MeasureSpec::Kind::finite_group;
        mu.finite_probs = rational_vector(j.at("probs"), "finite_group probs");
    } else {
        throw ConfigError("unknown measure variant '" + variant + "'");
    }
    mu.validate(system);
    return mu;
}

ordered_json group_to_json(const GroupSpec& spec) {
    ordered_json j;
    j["free_rank"] = spec.free_rank;
    j["finite_moduli"] = spec.finite_moduli;
    j["trivial_mask"] = std::vector<bool>(spec.trivial_mask.begin(), spec.trivial_mask.end());
    return j;
}

ordered_json subset_to_json(const FiniteSubset& F) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : F.elements) arr.push_back(e.coords);
    return arr;
}

ordered_json cover_to_json(const Cover& U, const SystemSpec& system) {
    ordered_json j;
    j["window"] = subset_to_json(U.window);
    ordered_json cells = ordered_json::array();
    for (const auto& cell : U.cells) {
        ordered_json c = ordered_json::array();
        for (const auto& row : cell) {
            ordered_json pat = ordered_json::array();
            for (int s : row) pat.push_back(system.alphabet()[static_cast<std::size_t>(s)]);
            c.push_back(pat);
        }
        cells.push_back(c);
    }
    j["cells"] = cells;
    j["partition"] = U.is_partition;
    return j;
}

} // namespace amenent
