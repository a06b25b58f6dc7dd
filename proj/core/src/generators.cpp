#include "framemul/generators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "framemul/rng.hpp"

namespace framemul {

namespace {

constexpr int kRedrawBudget = 100;

void require(bool condition, const std::string& message) {
    if (!condition) throw ValidationError(message);
}

std::string pair_label(std::size_t p, std::size_t q) {
    std::ostringstream os;
    os << "(" << p << "," << q << ")";
    return os.str();
}

VectorFamily standard_basis(std::size_t dim) {
    std::vector<CVector> members;
    members.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) members.push_back(CVector::basis(dim, i));
    return VectorFamily(dim, std::move(members));
}

VectorFamily random_members(GaussianRng& rng, std::size_t dim, std::size_t count) {
    std::vector<CVector> members;
    members.reserve(count);
    for (std::size_t k = 0; k < count; ++k) members.push_back(rng.vector(dim));
    return VectorFamily(dim, std::move(members));
}

// Two passes of classical Gram-Schmidt give a numerically orthonormal
// basis from seeded Gaussian draws, keeping generation deterministic.
std::vector<CVector> orthonormal_columns(GaussianRng& rng, std::size_t dim) {
    std::vector<CVector> q;
    q.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        CVector v = rng.vector(dim);
        for (int pass = 0; pass < 2; ++pass)
            for (const CVector& u : q) v = v - inner(v, u) * u;
        const double n = v.norm();
        require(n > 1e-8, "orthonormal_columns: degenerate draw");
        q.push_back(cx{1.0 / n, 0.0} * v);
    }
    return q;
}

VectorFamily riesz_from_matrix(const GenSpec& g) {
    require(g.condition >= 1.0, "riesz_from_matrix: condition target must be >= 1");
    require(g.count == 0 || g.count == g.dim,
            "riesz_from_matrix: member count must equal the dimension");
    GaussianRng rng(g.seed);
    const std::vector<CVector> u = orthonormal_columns(rng, g.dim);
    const std::vector<CVector> v = orthonormal_columns(rng, g.dim);

    // Singular values log-spaced from 1 down to 1/condition, so the
    // Riesz bounds are exactly [condition^-2, 1].
    std::vector<double> sigma(g.dim, 1.0);
    for (std::size_t j = 0; j < g.dim; ++j) {
        const double t = g.dim > 1 ? static_cast<double>(j) / static_cast<double>(g.dim - 1) : 0.0;
        sigma[j] = std::pow(g.condition, -t);
    }

    // Columns of U diag(sigma) V*.
    std::vector<CVector> members;
    members.reserve(g.dim);
    for (std::size_t k = 0; k < g.dim; ++k) {
        CVector col = CVector::zero(g.dim);
        for (std::size_t j = 0; j < g.dim; ++j)
            col = col + (cx{sigma[j], 0.0} * std::conj(v[j][k])) * u[j];
        members.push_back(std::move(col));
    }
    return VectorFamily(g.dim, std::move(members));
}

CVector gaussian_window(std::size_t dim) {
    CVector w = CVector::zero(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const double centered =
            static_cast<double>(j) <= static_cast<double>(dim) / 2.0
                ? static_cast<double>(j)
                : static_cast<double>(j) - static_cast<double>(dim);
        w[j] = cx{std::exp(-std::numbers::pi * centered * centered / static_cast<double>(dim)), 0.0};
    }
    return cx{1.0 / w.norm(), 0.0} * w;
}

CVector gabor_atom(const CVector& window, std::size_t shift, std::size_t modulation) {
    const std::size_t dim = window.dim();
    CVector atom = CVector::zero(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) *
                             static_cast<double>(modulation) / static_cast<double>(dim);
        atom[j] = std::polar(1.0, phase) * window[(j + dim - shift) % dim];
    }
    return atom;
}

VectorFamily gabor_regular(const GenSpec& g) {
    require(g.lattice_a >= 1 && g.dim % g.lattice_a == 0,
            "gabor_regular: lattice step a must divide the dimension");
    require(g.lattice_b >= 1 && g.dim % g.lattice_b == 0,
            "gabor_regular: lattice step b must divide the dimension");
    const std::size_t time_points = g.dim / g.lattice_a;
    const std::size_t freq_points = g.dim / g.lattice_b;
    require(g.count == 0 || g.count == time_points * freq_points,
            "gabor_regular: member count must equal the lattice size");

    const CVector window = gaussian_window(g.dim);
    std::vector<CVector> members;
    std::vector<std::string> labels;
    members.reserve(time_points * freq_points);
    for (std::size_t p = 0; p < time_points; ++p) {
        for (std::size_t q = 0; q < freq_points; ++q) {
            members.push_back(gabor_atom(window, p * g.lattice_a, q * g.lattice_b));
            labels.push_back(pair_label(p * g.lattice_a, q * g.lattice_b));
        }
    }
    return VectorFamily(g.dim, std::move(members), std::move(labels));
}

VectorFamily gabor_irregular(const GenSpec& g) {
    require(g.lattice_a >= 1 && g.dim % g.lattice_a == 0,
            "gabor_irregular: lattice step a must divide the dimension");
    require(g.lattice_b >= 1 && g.dim % g.lattice_b == 0,
            "gabor_irregular: lattice step b must divide the dimension");
    const std::size_t time_points = g.dim / g.lattice_a;
    const std::size_t freq_points = g.dim / g.lattice_b;
    const std::size_t total = time_points * freq_points;
    require(g.count >= 1 && g.count <= total,
            "gabor_irregular: subset size must be between 1 and the lattice size");

    const CVector window = gaussian_window(g.dim);
    GaussianRng rng(g.seed);
    for (int attempt = 1; attempt <= kRedrawBudget; ++attempt) {
        // Partial Fisher-Yates over the lattice points.
        std::vector<std::size_t> points(total);
        std::iota(points.begin(), points.end(), std::size_t{0});
        for (std::size_t i = 0; i < g.count; ++i) {
            const std::size_t j = i + rng.integer(total - i);
            std::swap(points[i], points[j]);
        }

        std::vector<CVector> members;
        std::vector<std::string> labels;
        members.reserve(g.count);
        for (std::size_t i = 0; i < g.count; ++i) {
            const std::size_t p = points[i] / freq_points;
            const std::size_t q = points[i] % freq_points;
            members.push_back(gabor_atom(window, p * g.lattice_a, q * g.lattice_b));
            labels.push_back(pair_label(p * g.lattice_a, q * g.lattice_b));
        }
        VectorFamily family(g.dim, std::move(members), std::move(labels));
        if (classify(family).is_frame) return family;
    }
    std::ostringstream os;
    os << "gabor_irregular: no frame subset of size " << g.count << " found after "
       << kRedrawBudget << " attempts";
    throw ValidationError(os.str());
}

VectorFamily harmonic_counterexample(const GenSpec& g) {
    require(g.harmonic_p >= 1, "harmonic_counterexample: P must be >= 1");
    require(g.count == 0 || g.count == g.harmonic_p * g.dim,
            "harmonic_counterexample: member count must equal P * dim");
    std::vector<CVector> members;
    std::vector<std::string> labels;
    members.reserve(g.harmonic_p * g.dim);
    for (std::size_t p = 1; p <= g.harmonic_p; ++p) {
        for (std::size_t q = 0; q < g.dim; ++q) {
            members.push_back(cx{1.0 / static_cast<double>(p), 0.0} * CVector::basis(g.dim, q));
            labels.push_back(pair_label(p, q + 1));
        }
    }
    return VectorFamily(g.dim, std::move(members), std::move(labels));
}

} // namespace

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::onb: return "onb";
        case FamilyKind::random_bessel: return "random_bessel";
        case FamilyKind::random_frame: return "random_frame";
        case FamilyKind::riesz_from_matrix: return "riesz_from_matrix";
        case FamilyKind::gabor_regular: return "gabor_regular";
        case FamilyKind::gabor_irregular: return "gabor_irregular";
        case FamilyKind::harmonic_counterexample: return "harmonic_counterexample";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(const std::string& name) {
    for (FamilyKind kind :
         {FamilyKind::onb, FamilyKind::random_bessel, FamilyKind::random_frame,
          FamilyKind::riesz_from_matrix, FamilyKind::gabor_regular, FamilyKind::gabor_irregular,
          FamilyKind::harmonic_counterexample}) {
        if (name == to_string(kind)) return kind;
    }
    throw ValidationError("unknown family kind: " + name);
}

VectorFamily generate(const GenSpec& g) {
    require(g.dim >= 1, "generate: dimension must be positive");
    switch (g.kind) {
        case FamilyKind::onb:
            require(g.count == 0 || g.count == g.dim,
                    "onb: member count must equal the dimension");
            return standard_basis(g.dim);
        case FamilyKind::random_bessel: {
            GaussianRng rng(g.seed);
            return random_members(rng, g.dim, g.count == 0 ? 2 * g.dim : g.count);
        }
        case FamilyKind::random_frame: {
            GaussianRng rng(g.seed);
            const std::size_t count = g.count == 0 ? 2 * g.dim : g.count;
            for (int attempt = 1; attempt <= kRedrawBudget; ++attempt) {
                VectorFamily family = random_members(rng, g.dim, count);
                const FrameReport report = classify(family);
                if (report.is_frame &&
                    *report.lower_bound_opt > 1e-6 * report.bessel_bound_opt)
                    return family;
            }
            std::ostringstream os;
            os << "random_frame: no well-conditioned frame after " << kRedrawBudget
               << " redraws (K=" << count << ", dim=" << g.dim << ")";
            throw ValidationError(os.str());
        }
        case FamilyKind::riesz_from_matrix:
            return riesz_from_matrix(g);
        case FamilyKind::gabor_regular:
            return gabor_regular(g);
        case FamilyKind::gabor_irregular:
            return gabor_irregular(g);
        case FamilyKind::harmonic_counterexample:
            return harmonic_counterexample(g);
    }
    throw ValidationError("generate: unknown family kind");
}

MultiplierSpec unbounded_symbol_fixture(std::size_t dim, std::size_t p_max) {
    GenSpec g;
    g.kind = FamilyKind::harmonic_counterexample;
    g.dim = dim;
    g.harmonic_p = p_max;
    VectorFamily family = generate(g);

    // Symbol p^2 on the (p,q) shell cancels the 1/p^2 decay of the
    // members: the operator sums to p_max * I.
    std::vector<cx> entries;
    entries.reserve(p_max * dim);
    for (std::size_t p = 1; p <= p_max; ++p)
        for (std::size_t q = 0; q < dim; ++q)
            entries.emplace_back(static_cast<double>(p * p), 0.0);
    return MultiplierSpec(Symbol(std::move(entries)), family, family);
}

} // namespace framemul
