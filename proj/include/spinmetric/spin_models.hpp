// spin_models.hpp — spin operators, the one-site non-Hermitian Hamiltonians
// H = -1/2 (c_y S^y + omega c_w I + i c_x gamma S^x) in their per-spin
// normalizations, and their closed-form spectra.

#pragma once

#include "spinmetric/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace spinmetric {

enum class Spin { half, one, three_half };

int dimension(Spin s);               // 2s+1
Spin parse_spin(std::string_view s); // "1/2" | "0.5" | "1" | "3/2" | "1.5"
std::string to_string(Spin s);

struct ModelParams {
    Spin spin = Spin::half;
    double gamma = 0.0;
    double omega = 1.0;
    double hbar = 1.0;

    // Model frequency: phi = sqrt(1-g^2) (s=1/2), sqrt((1-g^2)/2) (s=1),
    // sqrt(1-g^2)/6 (s=3/2). Real only in the unbroken regime |gamma| <= 1.
    double frequency() const;
    Complex frequency_c() const;  // principal continuation, valid for any gamma
    bool broken_regime() const;   // |gamma| > 1
    void validate() const;        // hbar > 0
};

struct SpinOperators {
    Matrix sx, sy, sz;
};

// Standard ladder construction; s=1/2 returns sigma/2.
SpinOperators spin_operators(Spin s);

// The time-independent non-Hermitian Hamiltonian of the model.
Matrix hamiltonian(const ModelParams& p);

struct Level {
    int k;           // +1/-1 | +1,0,-1 | +3,+1,-1,-3
    Complex energy;
    Vector state;    // unnormalized closed-form eigenvector
};

struct Spectrum {
    std::vector<Level> levels;  // descending k
    bool broken = false;        // energies complex, |gamma| > 1
};

Spectrum closed_form_spectrum(const ModelParams& p);

struct SpectrumCheck {
    int k;
    double residual;  // ||H psi - E psi|| / ||H||
};

struct SpectrumReport {
    std::vector<SpectrumCheck> checks;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::vector<int> failing;  // k labels with residual > tol
};

// Residual check of every closed-form eigenpair against H. Never throws on
// failure; the report lists the offending levels.
SpectrumReport verify_spectrum(const ModelParams& p, double tol);

}  // namespace spinmetric
