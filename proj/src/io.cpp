#include "distwave/io.hpp"

#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "distwave/util.hpp"

namespace distwave {

void parallel_for(long n, const std::function<void(long)>& body, int threads) {
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : int(hc);
    }
    if (threads == 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next(0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_spectrum_csv(const SpectralTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_spectrum_csv: cannot open " + path);
    out << "xi,rho,rho_tilde,re_m,im_m,re_a,im_a\n";
    for (long j = 0; j < t.xi.size(); ++j) {
        out << format_double(t.xi[j]) << ',' << format_double(t.rho[j]) << ','
            << format_double(t.rho_tilde[j]) << ',' << format_double(t.m[j].real()) << ','
            << format_double(t.m[j].imag()) << ',' << format_double(t.a[j].real()) << ','
            << format_double(t.a[j].imag()) << '\n';
    }
}

void write_phi_matrix(const SpectralTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_phi_matrix: cannot open " + path);
    const char magic[4] = {'D', 'W', 'P', 'H'};
    const std::uint32_t rows = std::uint32_t(t.phi.rows());
    const std::uint32_t cols = std::uint32_t(t.phi.cols());
    const std::uint32_t reserved = 0;
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(&rows), 4);
    out.write(reinterpret_cast<const char*>(&cols), 4);
    out.write(reinterpret_cast<const char*>(&reserved), 4);
    std::vector<double> row(cols);
    for (std::uint32_t i = 0; i < rows; ++i) {
        for (std::uint32_t j = 0; j < cols; ++j) row[j] = t.phi(i, j);
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(8 * cols));
    }
}

Mat read_phi_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_phi_matrix: cannot open " + path);
    char magic[4];
    std::uint32_t rows = 0, cols = 0, reserved = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&rows), 4);
    in.read(reinterpret_cast<char*>(&cols), 4);
    in.read(reinterpret_cast<char*>(&reserved), 4);
    if (std::memcmp(magic, "DWPH", 4) != 0) throw ConfigError("read_phi_matrix: bad magic");
    Mat m(rows, cols);
    std::vector<double> row(cols);
    for (std::uint32_t i = 0; i < rows; ++i) {
        in.read(reinterpret_cast<char*>(row.data()), std::streamsize(8 * cols));
        for (std::uint32_t j = 0; j < cols; ++j) m(i, j) = row[j];
    }
    if (!in) throw ConfigError("read_phi_matrix: truncated file");
    return m;
}

void write_real_csv(const Vec& coord, const Vec& values, const std::string& path,
                    const std::string& coord_name, const std::string& value_name) {
    if (coord.size() != values.size()) throw GridMismatch("write_real_csv: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_real_csv: cannot open " + path);
    out << coord_name << ',' << value_name << '\n';
    for (long i = 0; i < coord.size(); ++i)
        out << format_double(coord[i]) << ',' << format_double(values[i]) << '\n';
}

void write_complex_csv(const Vec& coord, const CVec& values, const std::string& path,
                       const std::string& coord_name) {
    if (coord.size() != values.size()) throw GridMismatch("write_complex_csv: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_complex_csv: cannot open " + path);
    out << coord_name << ",re,im\n";
    for (long i = 0; i < coord.size(); ++i)
        out << format_double(coord[i]) << ',' << format_double(values[i].real()) << ','
            << format_double(values[i].imag()) << '\n';
}

std::pair<Vec, Vec> read_real_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("read_real_csv: cannot open " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> c, v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("read_real_csv: malformed line");
        c.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    Vec cc(long(c.size())), vv(long(v.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        cc[long(i)] = c[i];
        vv[long(i)] = v[i];
    }
    return {cc, vv};
}

} // namespace distwave
