#pragma once

#include "cnl/phi.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace cnl {

struct ZeroRecord {
    std::string source_label;
    int index = 0;
    double ordinate = 0.0;  // zero at 1/2 + i ordinate
    cplx phi_prime = 0.0;   // derivative of the source at the zero
    double verified_residual = 0.0;

    cplx rho() const { return {0.5, ordinate}; }
    bool operator==(const ZeroRecord&) const = default;
};

// e^{i theta(t)} L(1/2 + it), real for self-dual sources
double hardy_z(const zero_source& src, double t);

struct zero_search_options {
    double step = 0.05;
    double tolerance = 1e-11;
    double residual_limit = 1e-9;
};

// first `count` zeros on the critical line, by increasing ordinate
std::vector<ZeroRecord> find_zeros(const zero_source& src, int count, const zero_search_options& opt = {});

// (T/2pi) log(T/2pi e) + 7/8
double riemann_von_mangoldt(double T);

// phi'(rho + shift_j) for a zero rho of factor j of a composite phi
cplx derivative_at_composite_zero(const phi_spec& phi, std::size_t factor, const ZeroRecord& rec);

class ZeroCatalog {
public:
    std::vector<std::string> provenance;  // header lines without the leading '#'

    const std::vector<ZeroRecord>& records(const std::string& label) const;
    void set_records(const std::string& label, std::vector<ZeroRecord> recs);
    std::vector<std::string> labels() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    bool operator==(const ZeroCatalog&) const = default;

private:
    std::map<std::string, std::vector<ZeroRecord>> by_source_;
};

void catalog_store(const ZeroCatalog& cat, const std::filesystem::path& path);
ZeroCatalog catalog_load(const std::filesystem::path& path);

// $CNL_CATALOG_DIR/zeros.tsv, or ./cnl-zero-cache/zeros.tsv
std::filesystem::path default_catalog_path();

// Returns at least `count` records for the source, computing and storing
// the catalog when the cached one is short.  `path` may be empty to skip
// persistence.
std::vector<ZeroRecord> ensure_zeros(ZeroCatalog& cat, const zero_source& src, int count,
                                     const std::filesystem::path& path, bool recompute = false);

// Process-wide zero provider over one catalog file; safe to share between
// threads, writes are serialized.
class zero_cache {
public:
    explicit zero_cache(std::filesystem::path path = default_catalog_path(), bool recompute = false);

    std::vector<ZeroRecord> zeros(const zero_source& src, int count);
    ZeroCatalog snapshot() const;
    const std::filesystem::path& path() const { return path_; }

private:
    mutable std::mutex mutex_;
    ZeroCatalog catalog_;
    std::filesystem::path path_;
    bool recompute_;
    std::set<std::string> refreshed_;
};

}
