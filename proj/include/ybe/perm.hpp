#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ybe {

// A bijection of {0..n-1}, stored as its image table.
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<std::uint8_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (std::uint8_t v : img_) {
            if (v >= img_.size() || seen[v])
                throw std::invalid_argument("Perm: image table is not a bijection");
            seen[v] = true;
        }
    }

    Perm(std::initializer_list<int> images) : Perm(to_bytes(images)) {}

    static Perm identity(int n) {
        std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), std::uint8_t{0});
        return Perm(std::move(img));
    }

    // Single cycle (c0 c1 ... ck) on {0..n-1}; all other points fixed.
    static Perm cycle(int n, std::initializer_list<int> cyc) {
        std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), std::uint8_t{0});
        if (cyc.size() > 1) {
            auto it = cyc.begin();
            int first = *it;
            int prev = first;
            for (++it; it != cyc.end(); ++it) {
                img[static_cast<std::size_t>(prev)] = static_cast<std::uint8_t>(*it);
                prev = *it;
            }
            img[static_cast<std::size_t>(prev)] = static_cast<std::uint8_t>(first);
        }
        return Perm(std::move(img));
    }

    int degree() const { return static_cast<int>(img_.size()); }

    int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }

    const std::vector<std::uint8_t>& images() const { return img_; }

    Perm inverse() const {
        std::vector<std::uint8_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            inv[img_[i]] = static_cast<std::uint8_t>(i);
        return Perm(std::move(inv));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    // (p * q)(i) = p(q(i)) — apply q first.
    friend Perm operator*(const Perm& p, const Perm& q) {
        if (p.degree() != q.degree())
            throw std::invalid_argument("Perm: degree mismatch in composition");
        std::vector<std::uint8_t> img(p.img_.size());
        for (std::size_t i = 0; i < img.size(); ++i)
            img[i] = p.img_[q.img_[i]];
        return Perm(std::move(img));
    }

    // Conjugate by phi: phi * p * phi^{-1}.
    Perm conjugated_by(const Perm& phi) const {
        if (phi.degree() != degree())
            throw std::invalid_argument("Perm: degree mismatch in conjugation");
        std::vector<std::uint8_t> img(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            img[phi.img_[i]] = phi.img_[img_[i]];
        return Perm(std::move(img));
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
        return a.img_ <=> b.img_;
    }

    // Cycle lengths, sorted descending. The conjugacy-class invariant in S_n.
    std::vector<int> cycle_type() const {
        std::vector<bool> seen(img_.size(), false);
        std::vector<int> type;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (std::size_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            type.push_back(len);
        }
        std::sort(type.rbegin(), type.rend());
        return type;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(static_cast<int>(img_[i]));
        }
        return s + "]";
    }

private:
    static std::vector<std::uint8_t> to_bytes(std::initializer_list<int> images) {
        std::vector<std::uint8_t> img;
        img.reserve(images.size());
        for (int v : images) {
            if (v < 0 || v > 255) throw std::invalid_argument("Perm: image out of range");
            img.push_back(static_cast<std::uint8_t>(v));
        }
        return img;
    }

    std::vector<std::uint8_t> img_;
};

} // namespace ybe
