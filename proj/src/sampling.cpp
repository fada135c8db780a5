#include "treelab/sampling.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace treelab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t SeedSpec::stream_seed() const {
    return splitmix64(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::mt19937_64 SeedSpec::make_rng() const { return std::mt19937_64(stream_seed()); }

namespace {

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleMatrix sample(const TreeIsingModel& m, int n, const SeedSpec& seed) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    const int p = m.node_count();
    const Forest& f = m.structure();

    // Deterministic traversal plan: per component, root = lowest node id,
    // BFS with ascending neighbor order.
    struct Step {
        Node node;
        Node parent;  // -1 for roots
        double agree; // (1+mu)/2 for non-roots
    };
    std::vector<Step> plan;
    plan.reserve(p);
    std::vector<char> seen(p, 0);
    for (Node s = 0; s < p; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        plan.push_back({s, -1, 0.0});
        std::queue<Node> q;
        q.push(s);
        while (!q.empty()) {
            Node v = q.front();
            q.pop();
            for (Node w : f.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    plan.push_back({w, v, (1.0 + m.mu(v, w)) / 2.0});
                    q.push(w);
                }
        }
    }

    SampleMatrix out;
    out.n = n;
    out.p = p;
    out.spins.resize(static_cast<std::size_t>(n) * p);
    auto rng = seed.make_rng();
    for (int row = 0; row < n; ++row) {
        std::int8_t* spins = &out.spins[static_cast<std::size_t>(row) * p];
        for (const Step& st : plan) {
            if (st.parent < 0) {
                spins[st.node] = (uniform01(rng) < 0.5) ? std::int8_t{1} : std::int8_t{-1};
            } else {
                bool agree = uniform01(rng) < st.agree;
                spins[st.node] = agree ? spins[st.parent] : static_cast<std::int8_t>(-spins[st.parent]);
            }
        }
    }
    return out;
}

namespace {

void write_header(std::ostream& os, const SampleMatrix& s, const SeedSpec& seed, bool binary) {
    os << (binary ? "samples-bin" : "samples") << " n=" << s.n << " p=" << s.p << " seed="
       << seed.master_seed << "/" << seed.trial_index << "\n";
    os << "# rng=mt19937_64 stream=splitmix64(master+(trial+1)*0x9E3779B97F4A7C15)\n";
}

}  // namespace

void write_samples(std::ostream& os, const SampleMatrix& s, const SeedSpec& seed) {
    write_header(os, s, seed, false);
    for (int i = 0; i < s.n; ++i) {
        for (int j = 0; j < s.p; ++j) os << (j ? " " : "") << (s.at(i, j) > 0 ? "+1" : "-1");
        os << "\n";
    }
}

void write_samples_binary(std::ostream& os, const SampleMatrix& s, const SeedSpec& seed) {
    write_header(os, s, seed, true);
    const int bytes_per_row = (s.p + 7) / 8;
    std::vector<char> row(bytes_per_row);
    for (int i = 0; i < s.n; ++i) {
        std::fill(row.begin(), row.end(), 0);
        for (int j = 0; j < s.p; ++j)
            if (s.at(i, j) > 0) row[j / 8] |= static_cast<char>(1 << (j % 8));
        os.write(row.data(), bytes_per_row);
    }
}

void write_samples_file(const std::string& path, const SampleMatrix& s, const SeedSpec& seed) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_samples(os, s, seed);
}

void write_samples_binary_file(const std::string& path, const SampleMatrix& s, const SeedSpec& seed) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_samples_binary(os, s, seed);
}

SampleMatrix read_samples(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty sample file");
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    const bool binary = (tag == "samples-bin");
    if (!binary && tag != "samples") throw std::runtime_error("bad sample file header");
    int n = -1, p = -1;
    std::string field;
    while (hs >> field) {
        if (field.rfind("n=", 0) == 0) n = std::stoi(field.substr(2));
        else if (field.rfind("p=", 0) == 0) p = std::stoi(field.substr(2));
    }
    if (n < 1 || p < 1) throw std::runtime_error("bad sample file header: missing n or p");

    SampleMatrix out;
    out.n = n;
    out.p = p;
    out.spins.resize(static_cast<std::size_t>(n) * p);

    // Skip comment lines after the header.
    while (is.peek() == '#') {
        std::string skip;
        std::getline(is, skip);
    }

    if (binary) {
        const int bytes_per_row = (p + 7) / 8;
        std::vector<char> row(bytes_per_row);
        for (int i = 0; i < n; ++i) {
            if (!is.read(row.data(), bytes_per_row))
                throw std::runtime_error("truncated binary sample file");
            for (int j = 0; j < p; ++j)
                out.spins[static_cast<std::size_t>(i) * p + j] =
                    (row[j / 8] >> (j % 8)) & 1 ? std::int8_t{1} : std::int8_t{-1};
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < p; ++j) {
                int v;
                if (!(is >> v) || (v != 1 && v != -1))
                    throw std::runtime_error("bad spin entry in sample file");
                out.spins[static_cast<std::size_t>(i) * p + j] = static_cast<std::int8_t>(v);
            }
        }
    }
    return out;
}

SampleMatrix read_samples_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open sample file: " + path);
    return read_samples(is);
}

}  // namespace treelab
