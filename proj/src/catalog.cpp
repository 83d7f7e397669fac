#include "cnl/zeros.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cnl {

namespace {

const std::vector<ZeroRecord> no_records;

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string record_line(const ZeroRecord& r)
{
    return r.source_label + '\t' + std::to_string(r.index) + '\t' + fmt17(r.ordinate) + '\t' +
           fmt17(r.phi_prime.real()) + '\t' + fmt17(r.phi_prime.imag()) + '\t' + fmt17(r.verified_residual);
}

std::vector<std::string> split_tabs(const std::string& line)
{
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = line.find('\t', start);
        f.push_back(line.substr(start, p - start));
        if (p == std::string::npos)
            break;
        start = p + 1;
    }
    return f;
}

double parse_double(const std::string& field, std::size_t line_no, const char* what)
{
    const char* b = field.data();
    const char* e = b + field.size();
    double v = 0.0;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || field.empty())
        throw std::runtime_error("zero catalog line " + std::to_string(line_no) + ": bad " + what + " field '" +
                                 field + "'");
    return v;
}

std::string today()
{
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", std::gmtime(&t));
    return buf;
}

}

const std::vector<ZeroRecord>& ZeroCatalog::records(const std::string& label) const
{
    auto it = by_source_.find(label);
    return it == by_source_.end() ? no_records : it->second;
}

void ZeroCatalog::set_records(const std::string& label, std::vector<ZeroRecord> recs)
{
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].source_label != label)
            throw std::invalid_argument("ZeroCatalog: record label mismatch");
        if (recs[i].index != static_cast<int>(i) + 1)
            throw std::invalid_argument("ZeroCatalog: indices must run 1, 2, ... without duplicates");
        if (i > 0 && !(recs[i].ordinate > recs[i - 1].ordinate))
            throw std::invalid_argument("ZeroCatalog: ordinates must increase with index");
    }
    by_source_[label] = std::move(recs);
}

std::vector<std::string> ZeroCatalog::labels() const
{
    std::vector<std::string> l;
    for (const auto& [k, v] : by_source_)
        l.push_back(k);
    return l;
}

std::size_t ZeroCatalog::size() const
{
    std::size_t n = 0;
    for (const auto& [k, v] : by_source_)
        n += v.size();
    return n;
}

void catalog_store(const ZeroCatalog& cat, const std::filesystem::path& path)
{
    std::string body;
    for (const auto& label : cat.labels())
        for (const auto& r : cat.records(label))
            body += record_line(r) + '\n';
    std::ostringstream os;
    for (const auto& p : cat.provenance)
        os << '#' << p << '\n';
    char sum[32];
    std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
    os << "#checksum fnv1a64 " << sum << '\n' << body;

    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write zero catalog " + tmp.string());
        f << os.str();
        if (!f)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ZeroCatalog catalog_load(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot read zero catalog " + path.string());
    ZeroCatalog cat;
    std::map<std::string, std::vector<ZeroRecord>> recs;
    std::string line, body, expected;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const std::string tag = "#checksum fnv1a64 ";
            if (line.rfind(tag, 0) == 0)
                expected = line.substr(tag.size());
            else
                cat.provenance.push_back(line.substr(1));
            continue;
        }
        auto fields = split_tabs(line);
        if (fields.size() != 6)
            throw std::runtime_error("zero catalog line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                     std::to_string(fields.size()));
        ZeroRecord r;
        r.source_label = fields[0];
        int idx = 0;
        auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), idx);
        if (ec != std::errc() || p != fields[1].data() + fields[1].size() || idx <= 0)
            throw std::runtime_error("zero catalog line " + std::to_string(line_no) + ": bad index field");
        r.index = idx;
        r.ordinate = parse_double(fields[2], line_no, "ordinate");
        double re = parse_double(fields[3], line_no, "re_phi_prime");
        double im = parse_double(fields[4], line_no, "im_phi_prime");
        r.phi_prime = {re, im};
        r.verified_residual = parse_double(fields[5], line_no, "residual");
        if (!(r.ordinate > 0.0))
            throw std::runtime_error("zero catalog line " + std::to_string(line_no) + ": ordinate must be positive");
        recs[r.source_label].push_back(r);
        body += line + '\n';
    }
    if (!expected.empty()) {
        char sum[32];
        std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
        if (expected != sum)
            throw std::runtime_error("zero catalog " + path.string() + ": checksum mismatch");
    }
    for (auto& [label, v] : recs) {
        try {
            cat.set_records(label, std::move(v));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("zero catalog " + path.string() + ": " + e.what());
        }
    }
    return cat;
}

std::filesystem::path default_catalog_path()
{
    const char* dir = std::getenv("CNL_CATALOG_DIR");
    std::filesystem::path base = (dir && *dir) ? std::filesystem::path(dir) : std::filesystem::path("cnl-zero-cache");
    return base / "zeros.tsv";
}

std::vector<ZeroRecord> ensure_zeros(ZeroCatalog& cat, const zero_source& src, int count,
                                     const std::filesystem::path& path, bool recompute)
{
    const std::string label = src.label();
    if (!recompute && static_cast<int>(cat.records(label).size()) < count && !path.empty() &&
        std::filesystem::exists(path)) {
        ZeroCatalog disk = catalog_load(path);
        if (disk.records(label).size() > cat.records(label).size())
            cat.set_records(label, disk.records(label));
        if (cat.provenance.empty())
            cat.provenance = disk.provenance;
    }
    if (recompute || static_cast<int>(cat.records(label).size()) < count) {
        cat.set_records(label, find_zeros(src, count));
        if (cat.provenance.empty()) {
            cat.provenance = {
                " cnl zero catalog",
                " method: Hardy Z sign changes on a 0.05 grid, bisection to 1e-11, residual check 1e-9",
                " fields: source_label index ordinate re_phi_prime im_phi_prime residual",
                " date: " + today(),
            };
        }
        if (!path.empty()) {
            // merge with anything another writer stored meanwhile
            if (std::filesystem::exists(path)) {
                ZeroCatalog disk = catalog_load(path);
                for (const auto& l : disk.labels())
                    if (l != label && disk.records(l).size() > cat.records(l).size())
                        cat.set_records(l, disk.records(l));
            }
            catalog_store(cat, path);
        }
    }
    const auto& all = cat.records(label);
    return {all.begin(), all.begin() + count};
}

zero_cache::zero_cache(std::filesystem::path path, bool recompute) : path_(std::move(path)), recompute_(recompute)
{
}

std::vector<ZeroRecord> zero_cache::zeros(const zero_source& src, int count)
{
    std::lock_guard<std::mutex> lock(mutex_);
    bool force = recompute_ && !refreshed_.count(src.label());
    auto out = ensure_zeros(catalog_, src, count, path_, force);
    refreshed_.insert(src.label());
    return out;
}

ZeroCatalog zero_cache::snapshot() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    return catalog_;
}

}
