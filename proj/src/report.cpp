#include "lensgrid/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "lensgrid/constructions.hpp"

namespace lensgrid {

std::string vecString(const std::vector<Rational>& v, const char* sep) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k].str();
    return s;
}

static std::vector<Rational> parseVec(const std::string& s) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');)
        if (!t.empty()) v.push_back(Rational::parse(t));
    return v;
}

// ---------------------------------------------------------------- cache

std::string ResultCache::key(const GridDiagram& d) {
    std::string enc = std::string(kCacheVersion) + "\n" + canonicalEncoding(d);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : enc) { h ^= c; h *= 1099511628211ull; }
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h;
    return o.str();
}

static std::string oneLine(const GridDiagram& d) {
    std::string s = formatKnot(canonicalForm(d));
    for (auto& c : s)
        if (c == '\n') c = '|';
    return s;
}

std::string serializeReport(const GridDiagram& d, const KnotReport& r) {
    std::ostringstream o;
    o << kCacheVersion << "\n";
    o << "encoding " << oneLine(d) << "\n";
    o << "pqn " << r.p << ' ' << r.q << ' ' << r.n << "\n";
    o << "hom_class " << r.homClass << "\n";
    o << "tau " << vecString(r.profile.tau, ",") << "\n";
    o << "reference " << vecString(r.profile.reference, ",") << "\n";
    auto table = [&](const char* tag, const HomologyTable& h) {
        for (auto& [k, v] : h.entries)
            o << tag << ' ' << std::get<0>(k) << ' ' << std::get<1>(k).str() << ' ' << std::get<2>(k).str() << ' ' << v << "\n";
    };
    table("hfk", r.hfk);
    table("tilde", r.tilde);
    table("oblocked", r.oBlocked);
    o << "end\n";
    return o.str();
}

KnotReport deserializeReport(const std::string& text, const GridDiagram* expect) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCacheVersion) throw ParseError("cache entry has the wrong version");
    KnotReport r;
    std::vector<Rational> tau, ref;
    bool ended = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "encoding") {
            std::string rest;
            std::getline(ls, rest);
            if (expect && rest.substr(1) != oneLine(*expect)) throw ParseError("cache key collision");
        } else if (tag == "pqn") {
            ls >> r.p >> r.q >> r.n;
        } else if (tag == "hom_class") {
            ls >> r.homClass;
        } else if (tag == "tau") {
            std::string v;
            ls >> v;
            tau = parseVec(v);
        } else if (tag == "reference") {
            std::string v;
            ls >> v;
            ref = parseVec(v);
        } else if (tag == "hfk" || tag == "tilde" || tag == "oblocked") {
            int s;
            std::string m, a;
            long k;
            ls >> s >> m >> a >> k;
            auto& h = tag == "hfk" ? r.hfk : tag == "tilde" ? r.tilde : r.oBlocked;
            h.add(s, Rational::parse(m), Rational::parse(a), k);
        } else if (tag == "end") {
            ended = true;
        }
    }
    if (!ended || tau.size() != static_cast<std::size_t>(r.p) || ref.size() != tau.size()) throw ParseError("truncated cache entry");
    r.profile = profileFromTau(r.p, r.q, r.homClass, tau, ref);
    r.locality = localityObstruction(r.profile);
    r.lprime = lPrimeCertificate(r.hfk);
    return r;
}

std::optional<KnotReport> ResultCache::load(const GridDiagram& d) const {
    if (!enabled()) return std::nullopt;
    std::ifstream f(std::filesystem::path(dir_) / (key(d) + ".txt"));
    if (!f) return std::nullopt;
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        auto r = deserializeReport(ss.str(), &d);
        r.fromCache = true;
        return r;
    } catch (const ParseError&) {
        return std::nullopt;  // stale or foreign entry: recompute
    }
}

void ResultCache::store(const GridDiagram& d, const KnotReport& r) {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lk(mu_);
    std::filesystem::create_directories(dir_);
    auto path = std::filesystem::path(dir_) / (key(d) + ".txt");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp);
        f << serializeReport(d, r);
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------- compute

KnotReport computeReport(const GridDiagram& d, const ComputeOptions& opt) {
    requireValid(d);
    if (opt.cache)
        if (auto hit = opt.cache->load(d)) return *hit;
    EngineOptions eo = opt.engine;
    eo.threads = opt.threads;
    auto res = analyzeDiagram(d, eo);
    KnotReport r;
    r.p = d.p;
    r.q = d.q;
    r.n = d.n;
    r.homClass = res.homClass;
    r.hfk = res.hfk;
    r.tilde = res.tilde;
    r.oBlocked = res.oBlocked;
    r.profile = profileFromTau(d.p, d.q, res.homClass, res.tau, simpleKnotReference(d.p, d.q, res.homClass, eo));
    r.locality = localityObstruction(r.profile);
    r.lprime = lPrimeCertificate(r.hfk);
    if (opt.cache) opt.cache->store(d, r);
    return r;
}

std::string formatReport(const KnotReport& r, Format f, std::optional<int> spinc) {
    std::ostringstream o;
    auto want = [&](int s) { return !spinc || *spinc == s; };
    if (f == Format::machine) {
        o << kFormatVersion << "\n";
        o << "p=" << r.p << "\nq=" << r.q << "\nn=" << r.n << "\nhom_class=" << r.homClass << "\n";
        for (auto& [k, v] : r.hfk.entries)
            if (want(std::get<0>(k)))
                o << "hfk " << std::get<0>(k) << ' ' << std::get<1>(k).str() << ' ' << std::get<2>(k).str() << ' ' << v << "\n";
        if (spinc) o << "spinc=" << *spinc << "\n";
        o << "tau=" << vecString(r.profile.tau, ",") << "\n";
        o << "tau_shifted=" << vecString(r.profile.tauShifted, ",") << "\n";
        o << "shift=" << r.profile.shift.str() << "\n";
        o << "locality_obstruction=" << r.locality.str() << "\n";
        o << "l_prime=" << lPrimeName(r.lprime) << "\n";
        return o.str();
    }
    o << "knot in L(" << r.p << "," << r.q << "), grid number " << r.n << ", homology class " << r.homClass << "\n";
    o << "knot Floer homology (Spin^c, Maslov, Alexander: rank)\n";
    for (int s = 0; s < r.p; ++s) {
        if (!want(s)) continue;
        o << "  s=" << s << ":";
        for (auto& [k, v] : r.hfk.entries)
            if (std::get<0>(k) == s) o << "  (" << std::get<1>(k).str() << ", " << std::get<2>(k).str() << "): " << v;
        o << "\n";
    }
    o << "tau = (" << vecString(r.profile.tau, ", ") << ")\n";
    o << "tau_shifted = (" << vecString(r.profile.tauShifted, ", ") << ")\n";
    o << "shift = " << r.profile.shift.str() << "\n";
    o << "locality_obstruction = " << r.locality.str() << "\n";
    o << "l_prime = " << lPrimeName(r.lprime) << "\n";
    return o.str();
}

PairReport distinguish(const KnotReport& a, const KnotReport& b) {
    PairReport r;
    r.verdict = almostConcordanceReport(a.profile, b.profile);
    r.shiftedA = a.profile.tauShifted;
    r.shiftedB = b.profile.tauShifted;
    r.distance = latticeDistance(a.profile.tauShifted, b.profile.tauShifted);
    r.bound = plGenusLowerBound(a.profile, b.profile);
    return r;
}

std::string formatPair(const PairReport& r, Format f) {
    std::ostringstream o;
    if (f == Format::machine) {
        o << kFormatVersion << "\n";
        o << "tau_shifted_a=" << vecString(r.shiftedA, ",") << "\n";
        o << "tau_shifted_b=" << vecString(r.shiftedB, ",") << "\n";
        o << "verdict=" << verdictName(r.verdict) << "\n";
        o << "distance=" << r.distance << "\n";
        o << "pl_genus_lower_bound=" << r.bound << "\n";
        return o.str();
    }
    o << "tau_shifted(A) = (" << vecString(r.shiftedA, ", ") << ")\n";
    o << "tau_shifted(B) = (" << vecString(r.shiftedB, ", ") << ")\n";
    o << "verdict = " << verdictName(r.verdict) << "\n";
    o << "distance = " << r.distance << "\n";
    o << "pl_genus_lower_bound = " << r.bound << "\n";
    return o.str();
}

// ---------------------------------------------------------------- sources

GridDiagram resolveSource(const std::string& src, const std::string& baseDir) {
    if (src.rfind("family:", 0) == 0) {
        FamilySpec f;
        std::string rest = src.substr(7);
        auto c = rest.find(':');
        f.family = rest.substr(0, c);
        if (c != std::string::npos) {
            std::stringstream ss(rest.substr(c + 1));
            for (std::string kv; std::getline(ss, kv, ',');) {
                auto e = kv.find('=');
                if (e == std::string::npos) throw ParseError("bad family parameter '" + kv + "'");
                int v;
                try { v = std::stoi(kv.substr(e + 1)); } catch (const std::logic_error&) { throw ParseError("bad family parameter '" + kv + "'"); }
                auto k = kv.substr(0, e);
                if (k == "p") f.p = v;
                else if (k == "q") f.q = v;
                else if (k == "k") f.k = v;
                else throw ParseError("unknown family parameter '" + k + "'");
            }
        }
        return familyDiagram(f);
    }
    std::filesystem::path p(src);
    if (p.is_relative() && !baseDir.empty()) p = std::filesystem::path(baseDir) / p;
    return readKnotFile(p.string());
}

std::vector<ManifestEntry> parseManifest(const std::string& text) {
    std::vector<ManifestEntry> out;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        ManifestEntry e;
        if (!(ls >> e.name)) continue;
        if (!(ls >> e.source)) throw ParseError("manifest entry '" + e.name + "' has no source");
        if (seen[e.name]++) throw ParseError("duplicate manifest name '" + e.name + "'");
        out.push_back(e);
    }
    return out;
}

MatrixResult runMatrix(const std::vector<ManifestEntry>& entries, const std::string& baseDir, Format f,
                       const ComputeOptions& opt) {
    MatrixResult mr;
    const std::size_t N = entries.size();
    std::vector<std::optional<KnotReport>> rep(N);
    std::vector<std::string> err(N);
    std::map<std::string, KnotReport> memo;
    auto fail = [&](int code) { if (!mr.exitCode) mr.exitCode = code; };
    for (std::size_t i = 0; i < N; ++i) {
        try {
            auto d = resolveSource(entries[i].source, baseDir);
            requireValid(d);
            auto enc = canonicalEncoding(d);
            if (auto it = memo.find(enc); it != memo.end()) {
                rep[i] = it->second;
                ++mr.cacheHits;
                continue;
            }
            rep[i] = computeReport(d, opt);
            if (rep[i]->fromCache) ++mr.cacheHits;
            memo[enc] = *rep[i];
        } catch (const ParseError& e) { err[i] = e.what(); fail(1); }
        catch (const ValidationError& e) { err[i] = e.what(); fail(2); }
        catch (const std::exception& e) { err[i] = e.what(); fail(3); }
    }
    auto comparable = [&](std::size_t i, std::size_t j) {
        return rep[i] && rep[j] && rep[i]->p == rep[j]->p && rep[i]->q == rep[j]->q && rep[i]->homClass == rep[j]->homClass;
    };
    std::ostringstream o;
    if (f == Format::machine) {
        o << kFormatVersion << "\n";
        for (std::size_t i = 0; i < N; ++i) {
            if (!rep[i]) { o << "error " << entries[i].name << ' ' << err[i] << "\n"; continue; }
            o << "knot " << entries[i].name << " p=" << rep[i]->p << " q=" << rep[i]->q << " hom_class=" << rep[i]->homClass
              << " tau_shifted=" << vecString(rep[i]->profile.tauShifted, ",") << "\n";
        }
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                o << "pair " << entries[i].name << ' ' << entries[j].name << ' ';
                if (!rep[i] || !rep[j]) o << "verdict=error\n";
                else if (!comparable(i, j)) o << "verdict=incomparable\n";
                else {
                    auto pr = distinguish(*rep[i], *rep[j]);
                    o << "verdict=" << verdictName(pr.verdict) << " distance=" << pr.distance << " pl_genus_lower_bound=" << pr.bound << "\n";
                }
            }
    } else {
        std::size_t w = 4;
        for (auto& e : entries) w = std::max(w, e.name.size() + 2);
        o << "D = Distinguished, I = Inconclusive, digit = PL-genus lower bound, . = not comparable, ! = error\n";
        o << std::setw(w) << "";
        for (auto& e : entries) o << std::setw(w) << e.name;
        o << "\n";
        for (std::size_t i = 0; i < N; ++i) {
            o << std::setw(w) << entries[i].name;
            for (std::size_t j = 0; j < N; ++j) {
                std::string cell;
                if (!rep[i] || !rep[j]) cell = "!";
                else if (!comparable(i, j)) cell = ".";
                else {
                    auto pr = distinguish(*rep[i], *rep[j]);
                    cell = (pr.verdict == Verdict::Distinguished ? "D" : "I") + std::to_string(pr.bound);
                }
                o << std::setw(w) << cell;
            }
            o << "\n";
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (rep[i]) o << entries[i].name << ": L(" << rep[i]->p << "," << rep[i]->q << ") class " << rep[i]->homClass
                          << ", tau_shifted = (" << vecString(rep[i]->profile.tauShifted, ", ") << ")\n";
            else o << entries[i].name << ": error: " << err[i] << "\n";
        }
    }
    mr.text = o.str();
    return mr;
}

}  // namespace lensgrid
