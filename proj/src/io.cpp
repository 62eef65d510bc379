#include "foursym/io.hpp"

#include <cstring>
#include <fstream>

namespace foursym::io {

namespace {

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) fail(Errc::io_error, "unexpected end of file");
    return v;
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) fail(Errc::io_error, "matrix json must be a non-empty array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd M(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) fail(Errc::io_error, "ragged matrix json");
        for (int c = 0; c < cols; ++c) M(r, c) = j[r][c].get<double>();
    }
    return M;
}

json algebra_to_json(const LieAlgebraBasis& alg) {
    json j;
    j["n"] = alg.matrix_size();
    json basis = json::array();
    for (const auto& B : alg.basis()) {
        json flat = json::array();
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c) flat.push_back(B(r, c));
        basis.push_back(flat);
    }
    j["basis"] = basis;
    if (!alg.translation_flags().empty()) {
        json flags = json::array();
        for (bool f : alg.translation_flags()) flags.push_back(f);
        j["translation_flags"] = flags;
    }
    return j;
}

LieAlgebraBasis algebra_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("basis")) fail(Errc::io_error, "algebra json needs n, basis");
    const int n = j["n"].get<int>();
    std::vector<Eigen::MatrixXd> basis;
    for (const auto& flat : j["basis"]) {
        if (static_cast<int>(flat.size()) != n * n)
            fail(Errc::io_error, "basis entry has wrong length");
        Eigen::MatrixXd B(n, n);
        int t = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) B(r, c) = flat[t++].get<double>();
        basis.push_back(B);
    }
    std::vector<bool> flags;
    if (j.contains("translation_flags"))
        for (const auto& f : j["translation_flags"]) flags.push_back(f.get<bool>());
    return make_algebra(n, basis, flags);
}

json automorphism_to_json(const LinearAutomorphism& tau) {
    json j;
    j["matrix"] = matrix_to_json(tau.matrix);
    j["order"] = tau.order;
    return j;
}

LinearAutomorphism automorphism_from_json(const json& j) {
    if (!j.contains("matrix") || !j.contains("order"))
        fail(Errc::io_error, "automorphism json needs matrix, order");
    LinearAutomorphism tau;
    tau.matrix = matrix_from_json(j["matrix"]);
    tau.order = j["order"].get<int>();
    if (tau.order != 2 && tau.order != 4) fail(Errc::io_error, "order must be 2 or 4");
    return tau;
}

json spec_to_json(const FourSymmetricSpec& spec) {
    json j = algebra_to_json(spec.g);
    j["tau"] = automorphism_to_json(spec.tau);
    j["J0_m"] = matrix_to_json(spec.pair.tau_m);
    j["family"] = spec.family;
    j["params"] = spec.params;
    return j;
}

FourSymmetricSpec spec_from_json(const json& j) {
    FourSymmetricSpec spec;
    spec.g = algebra_from_json(j);
    if (!j.contains("tau")) fail(Errc::io_error, "spec json needs tau");
    spec.tau = automorphism_from_json(j["tau"]);
    spec.family = j.value("family", std::string("custom"));
    if (j.contains("params"))
        for (const auto& p : j["params"]) spec.params.push_back(p.get<double>());
    spec.grading = z4_decompose(spec.g, spec.tau);
    spec.pair = make_reductive(spec.g, spec.grading);
    return spec;
}

json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(Errc::io_error, "cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        fail(Errc::io_error, "json parse error in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) fail(Errc::io_error, "cannot open " + path + " for writing");
    os << j.dump(2) << "\n";
}

void write_form(const std::string& path, const DiscreteOneForm& form) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(Errc::io_error, "cannot open " + path + " for writing");
    os.write("ZCG1", 4);
    put<uint32_t>(os, static_cast<uint32_t>(form.grid.nu));
    put<uint32_t>(os, static_cast<uint32_t>(form.grid.nv));
    put<double>(os, form.grid.h);
    put<uint32_t>(os, static_cast<uint32_t>(form.Au.rows()));
    put<uint8_t>(os, form.grid.periodic_u ? 1 : 0);
    put<uint8_t>(os, form.grid.periodic_v ? 1 : 0);
    const int dim = static_cast<int>(form.Au.rows());
    for (int k = 0; k < form.grid.nodes(); ++k) {
        for (int d = 0; d < dim; ++d) put<double>(os, form.Au(d, k));
        for (int d = 0; d < dim; ++d) put<double>(os, form.Av(d, k));
    }
}

DiscreteOneForm read_form(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(Errc::io_error, "cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "ZCG1", 4) != 0) fail(Errc::io_error, "bad form.grid magic");
    const auto nu = get<uint32_t>(is);
    const auto nv = get<uint32_t>(is);
    const auto h = get<double>(is);
    const auto dim = get<uint32_t>(is);
    const auto pu = get<uint8_t>(is);
    const auto pv = get<uint8_t>(is);
    DiscreteOneForm form;
    form.grid = Grid2D(static_cast<int>(nu), static_cast<int>(nv), h, pu != 0, pv != 0);
    form.Au.resize(dim, form.grid.nodes());
    form.Av.resize(dim, form.grid.nodes());
    for (int k = 0; k < form.grid.nodes(); ++k) {
        for (uint32_t d = 0; d < dim; ++d) form.Au(d, k) = get<double>(is);
        for (uint32_t d = 0; d < dim; ++d) form.Av(d, k) = get<double>(is);
    }
    return form;
}

void write_frames(const std::string& path, const Grid2D& grid,
                  const std::vector<Eigen::MatrixXd>& frames) {
    if (static_cast<int>(frames.size()) != grid.nodes())
        fail(Errc::bad_input, "frame count does not match the grid");
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(Errc::io_error, "cannot open " + path + " for writing");
    os.write("ZCF1", 4);
    put<uint32_t>(os, static_cast<uint32_t>(grid.nu));
    put<uint32_t>(os, static_cast<uint32_t>(grid.nv));
    put<double>(os, grid.h);
    put<uint32_t>(os, static_cast<uint32_t>(frames[0].rows()));
    put<uint8_t>(os, grid.periodic_u ? 1 : 0);
    put<uint8_t>(os, grid.periodic_v ? 1 : 0);
    const int n = static_cast<int>(frames[0].rows());
    for (const auto& F : frames)
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) put<double>(os, F(r, c));
}

std::pair<Grid2D, std::vector<Eigen::MatrixXd>> read_frames(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(Errc::io_error, "cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "ZCF1", 4) != 0) fail(Errc::io_error, "bad frame.grid magic");
    const auto nu = get<uint32_t>(is);
    const auto nv = get<uint32_t>(is);
    const auto h = get<double>(is);
    const auto n = get<uint32_t>(is);
    const auto pu = get<uint8_t>(is);
    const auto pv = get<uint8_t>(is);
    const Grid2D grid(static_cast<int>(nu), static_cast<int>(nv), h, pu != 0, pv != 0);
    std::vector<Eigen::MatrixXd> frames(grid.nodes(), Eigen::MatrixXd(n, n));
    for (auto& F : frames)
        for (uint32_t c = 0; c < n; ++c)
            for (uint32_t r = 0; r < n; ++r) F(r, c) = get<double>(is);
    return {grid, frames};
}

}  // namespace foursym::io
