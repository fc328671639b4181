#include "moyal/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace moyal::io {

namespace {

// Atomic-ish file write: stream into <path>.tmp, rename over the target.
class AtomicFile {
public:
    explicit AtomicFile(const std::string& path)
        : path_(path), tmp_(path + ".tmp"), out_(tmp_, std::ios::trunc) {
        if (!out_) throw Error("io: cannot open " + tmp_ + " for writing");
    }

    std::ofstream& stream() { return out_; }

    void commit() {
        out_.flush();
        if (!out_) throw Error("io: write to " + tmp_ + " failed");
        out_.close();
        if (std::rename(tmp_.c_str(), path_.c_str()) != 0)
            throw Error("io: cannot rename " + tmp_ + " to " + path_);
        committed_ = true;
    }

    ~AtomicFile() {
        if (!committed_) std::remove(tmp_.c_str());
    }

private:
    std::string path_, tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_field_csv(const std::string& path, const PhaseSpaceField& F) {
    for (const cplx& v : F.values)
        if (std::abs(v.imag()) > 1e-12)
            throw Error("io: field has imaginary residue " +
                        std::to_string(v.imag()) + "; use the complex writer");
    AtomicFile f(path);
    f.stream() << "x,p,value\n";
    for (int j = 0; j < F.grid.n; ++j)
        for (int k = 0; k < F.grid.n; ++k)
            f.stream() << num(F.grid.x(j)) << ',' << num(F.grid.p(k)) << ','
                       << num(F.at(j, k).real()) << '\n';
    f.commit();
}

void write_complex_field_csv(const std::string& path, const PhaseSpaceField& F) {
    AtomicFile f(path);
    f.stream() << "x,p,re,im\n";
    for (int j = 0; j < F.grid.n; ++j)
        for (int k = 0; k < F.grid.n; ++k)
            f.stream() << num(F.grid.x(j)) << ',' << num(F.grid.p(k)) << ','
                       << num(F.at(j, k).real()) << ','
                       << num(F.at(j, k).imag()) << '\n';
    f.commit();
}

void write_kernel_csv(const std::string& path, const weyl::OperatorKernel& A) {
    AtomicFile f(path);
    f.stream() << "x1,x2,re,im\n";
    for (int a = 0; a < A.grid.n; ++a)
        for (int b = 0; b < A.grid.n; ++b)
            f.stream() << num(A.grid.x(a)) << ',' << num(A.grid.x(b)) << ','
                       << num(A.at(a, b).real()) << ','
                       << num(A.at(a, b).imag()) << '\n';
    f.commit();
}

void write_profile_csv(const std::string& path, const std::string& axis,
                       const std::vector<double>& coords,
                       const std::vector<double>& values) {
    if (coords.size() != values.size())
        throw Error("io: profile coordinate/value size mismatch");
    AtomicFile f(path);
    f.stream() << axis << ",value\n";
    for (size_t i = 0; i < coords.size(); ++i)
        f.stream() << num(coords[i]) << ',' << num(values[i]) << '\n';
    f.commit();
}

void write_json(const std::string& path, const nlohmann::json& j) {
    AtomicFile f(path);
    f.stream() << j.dump(2) << '\n';
    f.commit();
}

nlohmann::json grid_json(const GridSpec& g) {
    return {{"n", g.n}, {"length", g.length}, {"hbar", g.hbar}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
    return GridSpec(j.at("n").get<int>(), j.at("length").get<double>(),
                    j.value("hbar", 1.0));
}

nlohmann::json sidecar(const GridSpec& g, double time) {
    return {{"tool_version", kToolVersion}, {"grid", grid_json(g)},
            {"time", time}};
}

}  // namespace moyal::io
