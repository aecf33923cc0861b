#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

enum class Boundary { periodic, open };

/// One-dimensional lattice of L fermionic modes.
struct LatticeSpec {
    int L = 1;
    Boundary boundary = Boundary::periodic;

    LatticeSpec() = default;
    LatticeSpec(int sites, Boundary b = Boundary::periodic) : L(sites), boundary(b) {
        if (L < 1) throw std::invalid_argument("LatticeSpec: L must be >= 1");
    }

    // Fock-space dimension 2^L.
    long dim() const { return 1L << L; }

    int wrap(int x) const {
        if (boundary == Boundary::periodic) {
            int r = x % L;
            return r < 0 ? r + L : r;
        }
        return x;
    }

    bool contains(int x) const { return x >= 0 && x < L; }

    // Shortest distance between sites (ring distance when periodic).
    int distance(int x, int y) const {
        int d = std::abs(x - y);
        if (boundary == Boundary::periodic) d = std::min(d, L - d);
        return d;
    }

    bool operator==(const LatticeSpec& o) const {
        return L == o.L && boundary == o.boundary;
    }
};

} // namespace tracelab
