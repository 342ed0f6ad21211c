#include "aca/synthetic_field.hpp"

#include <cmath>
#include <stdexcept>

namespace aca {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

Vec SyntheticField::condition_part(const Vec& p) const {
    Vec g(static_cast<std::size_t>(m), 0.0);
    condition_part_into(p, g.data());
    return g;
}

void SyntheticField::condition_part_into(const Vec& p, double* out) const {
    if (static_cast<int>(p.size()) != d) {
        throw std::invalid_argument("SyntheticField: condition dimension mismatch");
    }
    for (int r = 0; r < m; ++r) out[r] = 0.0;
    for (const FieldTerm& term : terms) {
        double phase = term.phase;
        for (int a = 0; a < d; ++a) phase += term.freq[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(a)];
        const double s = std::sin(phase);
        for (int r = 0; r < m; ++r) out[r] += term.amp[static_cast<std::size_t>(r)] * s;
    }
}

Mat SyntheticField::condition_jacobian(const Vec& p) const {
    Mat jac(m, d);
    for (const FieldTerm& term : terms) {
        double phase = term.phase;
        for (int a = 0; a < d; ++a) phase += term.freq[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(a)];
        const double c = std::cos(phase);
        for (int r = 0; r < m; ++r) {
            for (int a = 0; a < d; ++a) {
                jac.at(r, a) += term.amp[static_cast<std::size_t>(r)] * term.freq[static_cast<std::size_t>(a)] * c;
            }
        }
    }
    return jac;
}

Vec SyntheticField::eval(const Vec& z, const Vec& p, double t) const {
    if (static_cast<int>(z.size()) != m) {
        throw std::invalid_argument("SyntheticField: state dimension mismatch");
    }
    Vec out(static_cast<std::size_t>(m), 0.0);
    eval_into(z.data(), p, t, out.data());
    return out;
}

void SyntheticField::eval_into(const double* z, const Vec& p, double t, double* out) const {
    condition_part_into(p, out);
    state_coupling.apply_add(z, out);
    for (int r = 0; r < m; ++r) out[r] += drift[static_cast<std::size_t>(r)] * t;
}

SyntheticField sample_field(std::uint64_t seed, int d, int m, int num_terms,
                            double l_target, double lambda_target) {
    if (d < 1 || m < 1 || num_terms < 1) {
        throw std::invalid_argument("sample_field: d, m, num_terms must be >= 1");
    }
    if (!(l_target > 0.0) || lambda_target < 0.0) {
        throw std::invalid_argument("sample_field: l_target > 0 and lambda_target >= 0 required");
    }
    Rng rng(derive_seed(seed, 0xf1e1d));
    SyntheticField f;
    f.d = d;
    f.m = m;
    f.terms.resize(static_cast<std::size_t>(num_terms));
    double budget = 0.0;
    for (FieldTerm& term : f.terms) {
        term.amp.resize(static_cast<std::size_t>(m));
        term.freq.resize(static_cast<std::size_t>(d));
        for (double& x : term.amp) x = rng.gaussian();
        // Random direction with magnitude in [1.5, 3.5]: wavelengths between
        // ~1.8 and ~4.2 domain widths. Keeping the magnitude away from zero
        // matters: a near-constant term would consume Lipschitz budget while
        // contributing no variation, flattening the coverage error.
        double freq_norm_sq = 0.0;
        for (double& x : term.freq) {
            x = rng.gaussian();
            freq_norm_sq += x * x;
        }
        const double magnitude = rng.uniform(1.5, 3.5);
        const double freq_scale = magnitude / std::sqrt(freq_norm_sq);
        for (double& x : term.freq) x *= freq_scale;
        term.phase = rng.uniform(0.0, 2.0 * kPi);
        budget += norm2(term.amp) * norm2(term.freq);
    }
    const double amp_scale = l_target / budget;
    for (FieldTerm& term : f.terms) {
        for (double& x : term.amp) x *= amp_scale;
    }
    f.l_cert = l_target;

    f.state_coupling = Mat(m, m);
    if (lambda_target > 0.0) {
        for (double& x : f.state_coupling.a) x = rng.gaussian();
        const double sn = f.state_coupling.spectral_norm();
        for (double& x : f.state_coupling.a) x *= lambda_target / sn;
    }
    f.lambda_cert = lambda_target;

    f.drift.resize(static_cast<std::size_t>(m));
    for (double& x : f.drift) x = rng.gaussian();
    return f;
}

NoiseModel NoiseModel::gaussian(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("NoiseModel: sigma >= 0 required");
    NoiseModel n;
    n.kind = NoiseKind::gaussian;
    n.sigma = sigma;
    return n;
}

NoiseModel NoiseModel::student(double nu, double scale) {
    if (!(nu > 1.0) || !(scale > 0.0)) {
        throw std::invalid_argument("NoiseModel: student_t needs nu > 1 and scale > 0");
    }
    NoiseModel n;
    n.kind = NoiseKind::student_t;
    n.nu = nu;
    n.scale = scale;
    return n;
}

NoiseModel NoiseModel::pareto(double alpha, double scale) {
    if (!(alpha > 1.0) || !(scale > 0.0)) {
        throw std::invalid_argument("NoiseModel: symmetric_pareto needs alpha > 1 and scale > 0");
    }
    NoiseModel n;
    n.kind = NoiseKind::symmetric_pareto;
    n.alpha = alpha;
    n.scale = scale;
    return n;
}

double NoiseModel::draw(Rng& rng) const {
    switch (kind) {
        case NoiseKind::gaussian:
            return sigma == 0.0 ? 0.0 : sigma * rng.gaussian();
        case NoiseKind::student_t:
            return scale * rng.student_t(nu);
        case NoiseKind::symmetric_pareto:
            return rng.pareto_symmetric(alpha, scale);
    }
    return 0.0;
}

double NoiseModel::moment_order() const {
    switch (kind) {
        case NoiseKind::gaussian: return 2.0;
        case NoiseKind::student_t: return std::min(2.0, nu - 0.1);
        case NoiseKind::symmetric_pareto: return std::min(2.0, alpha - 0.1);
    }
    return 2.0;
}

double NoiseModel::moment_scale() const {
    const double q = moment_order();
    switch (kind) {
        case NoiseKind::gaussian:
            return sigma;  // E|eps|^2 = sigma^2
        case NoiseKind::student_t: {
            // E|X|^q = scale^q nu^{q/2} Gamma((q+1)/2) Gamma((nu-q)/2) / (sqrt(pi) Gamma(nu/2))
            const double log_moment = q * std::log(scale) + 0.5 * q * std::log(nu) +
                                      std::lgamma(0.5 * (q + 1.0)) + std::lgamma(0.5 * (nu - q)) -
                                      0.5 * std::log(kPi) - std::lgamma(0.5 * nu);
            return std::exp(log_moment / q);
        }
        case NoiseKind::symmetric_pareto:
            // E|X|^q = scale^q alpha / (alpha - q)
            return scale * std::pow(alpha / (alpha - q), 1.0 / q);
    }
    return 0.0;
}

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "gaussian") return NoiseKind::gaussian;
    if (name == "student_t") return NoiseKind::student_t;
    if (name == "symmetric_pareto") return NoiseKind::symmetric_pareto;
    throw std::invalid_argument("unknown noise kind: " + name);
}

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::student_t: return "student_t";
        case NoiseKind::symmetric_pareto: return "symmetric_pareto";
    }
    return "gaussian";
}

Vec observe(const SyntheticField& field, const Vec& z, const Vec& p, double t,
            const NoiseModel& noise, Rng& rng) {
    Vec y = field.eval(z, p, t);
    for (double& v : y) v += noise.draw(rng);
    return y;
}

Vec observe(const SyntheticField& field, const Vec& z, const Vec& p, double t,
            const NoiseModel& noise, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x0b5));
    return observe(field, z, p, t, noise, rng);
}

bool AxisBox::contains(const Vec& p) const {
    for (std::size_t a = 0; a < lo.size(); ++a) {
        if (p[a] < lo[a] || p[a] > hi[a]) return false;
    }
    return true;
}

double AxisBox::volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
    return v;
}

Vec PiecewiseField::eval(const Vec& z, const Vec& p, double t) const {
    Vec out = base.eval(z, p, t);
    if (exceptional.contains(p)) {
        for (std::size_t r = 0; r < out.size(); ++r) out[r] += jump[r];
    }
    return out;
}

PiecewiseField make_piecewise(const SyntheticField& base, const ConditionSpace& space,
                              double volume_fraction, double jump_magnitude, const Vec& corner) {
    if (!(volume_fraction > 0.0 && volume_fraction < 1.0)) {
        throw std::invalid_argument("make_piecewise: volume fraction in (0,1) required");
    }
    if (jump_magnitude < 0.0) throw std::invalid_argument("make_piecewise: jump magnitude >= 0 required");
    if (static_cast<int>(corner.size()) != space.dim) {
        throw std::invalid_argument("make_piecewise: corner dimension mismatch");
    }
    const double side_scale = std::pow(volume_fraction, 1.0 / space.dim);
    PiecewiseField out;
    out.base = base;
    out.exceptional.lo.resize(corner.size());
    out.exceptional.hi.resize(corner.size());
    for (int a = 0; a < space.dim; ++a) {
        const double side = side_scale * space.width(a);
        const double lo_a = space.lo[static_cast<std::size_t>(a)];
        const double hi_a = space.hi[static_cast<std::size_t>(a)];
        // Snap to whichever end of the axis the corner touches.
        const bool at_low_end = std::fabs(corner[static_cast<std::size_t>(a)] - lo_a) <=
                                std::fabs(corner[static_cast<std::size_t>(a)] - hi_a);
        if (at_low_end) {
            out.exceptional.lo[static_cast<std::size_t>(a)] = lo_a;
            out.exceptional.hi[static_cast<std::size_t>(a)] = lo_a + side;
        } else {
            out.exceptional.lo[static_cast<std::size_t>(a)] = hi_a - side;
            out.exceptional.hi[static_cast<std::size_t>(a)] = hi_a;
        }
    }
    out.jump.assign(static_cast<std::size_t>(base.m), jump_magnitude / std::sqrt(static_cast<double>(base.m)));
    return out;
}

nlohmann::json field_to_json(const SyntheticField& field) {
    nlohmann::json j;
    j["d"] = field.d;
    j["m"] = field.m;
    nlohmann::json amps = nlohmann::json::array();
    nlohmann::json freqs = nlohmann::json::array();
    nlohmann::json phases = nlohmann::json::array();
    for (const FieldTerm& t : field.terms) {
        for (double a : t.amp) amps.push_back(a);
        for (double w : t.freq) freqs.push_back(w);
        phases.push_back(t.phase);
    }
    j["amp"] = std::move(amps);
    j["freq"] = std::move(freqs);
    j["phase"] = std::move(phases);
    j["state_coupling"] = field.state_coupling.a;  // row-major m x m
    j["drift"] = field.drift;
    j["l_cert"] = field.l_cert;
    j["lambda_cert"] = field.lambda_cert;
    return j;
}

SyntheticField field_from_json(const nlohmann::json& j) {
    SyntheticField f;
    f.d = j.at("d").get<int>();
    f.m = j.at("m").get<int>();
    const auto amps = j.at("amp").get<std::vector<double>>();
    const auto freqs = j.at("freq").get<std::vector<double>>();
    const auto phases = j.at("phase").get<std::vector<double>>();
    const std::size_t num_terms = phases.size();
    if (amps.size() != num_terms * static_cast<std::size_t>(f.m) ||
        freqs.size() != num_terms * static_cast<std::size_t>(f.d)) {
        throw std::invalid_argument("field_from_json: inconsistent term arrays");
    }
    f.terms.resize(num_terms);
    for (std::size_t k = 0; k < num_terms; ++k) {
        f.terms[k].amp.assign(amps.begin() + static_cast<std::ptrdiff_t>(k * f.m),
                              amps.begin() + static_cast<std::ptrdiff_t>((k + 1) * f.m));
        f.terms[k].freq.assign(freqs.begin() + static_cast<std::ptrdiff_t>(k * f.d),
                               freqs.begin() + static_cast<std::ptrdiff_t>((k + 1) * f.d));
        f.terms[k].phase = phases[k];
    }
    f.state_coupling = Mat(f.m, f.m);
    f.state_coupling.a = j.at("state_coupling").get<std::vector<double>>();
    if (f.state_coupling.a.size() != static_cast<std::size_t>(f.m) * static_cast<std::size_t>(f.m)) {
        throw std::invalid_argument("field_from_json: bad state_coupling size");
    }
    f.drift = j.at("drift").get<std::vector<double>>();
    f.l_cert = j.at("l_cert").get<double>();
    f.lambda_cert = j.at("lambda_cert").get<double>();
    return f;
}

}  // namespace aca
