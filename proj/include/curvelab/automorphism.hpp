#ifndef CURVELAB_AUTOMORPHISM_HPP
#define CURVELAB_AUTOMORPHISM_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvelab/error.hpp"
#include "curvelab/free_group.hpp"
#include "curvelab/surface.hpp"

namespace curvelab {

// Automorphism of the free fundamental group given by generator images and
// the images of its claimed inverse. validate_automorphism decides whether
// the pair is genuine and preserves the peripheral structure.
struct FreeAutomorphism {
    std::string name;
    std::vector<Word> images;
    std::vector<Word> inverse_images;

    Word apply(const Word& w) const { return substitute(images, w); }
    Word apply_inverse(const Word& w) const { return substitute(inverse_images, w); }

    FreeAutomorphism inverted() const {
        return {name.empty() ? std::string{} : name + "^-1", inverse_images, images};
    }

    static Word substitute(const std::vector<Word>& table, const Word& w) {
        Word out;
        for (Letter l : w) {
            const Word& img = table.at(l.generator());
            if (l.inverted()) {
                for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(it->inverse());
            } else {
                out.insert(out.end(), img.begin(), img.end());
            }
        }
        return free_reduce(out);
    }
};

inline FreeAutomorphism identity_automorphism(const SurfaceModel& m) {
    FreeAutomorphism a;
    a.name = "id";
    for (std::size_t i = 0; i < m.rank(); ++i) a.images.push_back({Letter(i, false)});
    a.inverse_images = a.images;
    return a;
}

// Both compositions fix every generator, and the images of the puncture
// loops are, up to conjugacy and inversion, a permutation of them.
inline bool validate_automorphism(const SurfaceModel& m, const FreeAutomorphism& a) {
    if (a.images.size() != m.rank() || a.inverse_images.size() != m.rank()) return false;
    for (const auto* table : {&a.images, &a.inverse_images})
        for (const auto& w : *table)
            for (Letter l : w)
                if (l.generator() >= m.rank()) return false;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        const Word x{Letter(i, false)};
        if (a.apply(a.apply_inverse(x)) != x) return false;
        if (a.apply_inverse(a.apply(x)) != x) return false;
    }
    const auto& per = m.peripheral_classes();
    std::vector<bool> hit(per.size(), false);
    for (const auto& p : m.peripheral_words()) {
        const Word img = cyclic_reduce(a.apply(p));
        if (img.empty() || primitive_period(img) != img.size()) return false;
        const CurveClass c = CurveClass::from_word(img);
        auto it = std::find(per.begin(), per.end(), c);
        if (it == per.end()) return false;
        auto k = static_cast<std::size_t>(it - per.begin());
        if (hit[k]) return false;
        hit[k] = true;
    }
    return true;
}

// Half twists of the punctured sphere S_{0,n}: sigma_i exchanges punctures i
// and i+1 for i < n-1; the last one exchanges puncture n-1 with the puncture
// at the end of the long product.
inline std::vector<FreeAutomorphism> braid_generators(const SurfaceModel& m) {
    if (m.genus() != 0) throw InvalidInput("braid generators are built in only for genus 0 models");
    const std::size_t r = m.rank();
    std::vector<FreeAutomorphism> out;
    auto x = [](std::size_t i) { return Letter(i, false); };
    for (std::size_t i = 0; i + 1 < r; ++i) {
        FreeAutomorphism a = identity_automorphism(m);
        a.name = "sigma" + std::to_string(i + 1);
        a.images[i] = {x(i), x(i + 1), x(i).inverse()};
        a.images[i + 1] = {x(i)};
        a.inverse_images[i] = {x(i + 1)};
        a.inverse_images[i + 1] = {x(i + 1).inverse(), x(i), x(i + 1)};
        out.push_back(a);
    }
    if (r >= 1) {
        // x_r -> x_r (x_1...x_r)^-1 x_r^-1 = (x_1...x_{r-1})^-1 x_r^-1, with
        // inverse x_r -> (x_1...x_r)^-1; the other generators are fixed.
        FreeAutomorphism a = identity_automorphism(m);
        a.name = "sigma" + std::to_string(r);
        const std::size_t last = r - 1;
        Word prod;
        for (std::size_t i = 0; i < r; ++i) prod.push_back(x(i));
        a.images[last] = free_reduce(concat(concat(Word{x(last)}, inverse(prod)), Word{x(last).inverse()}));
        a.inverse_images[last] = inverse(prod);
        out.push_back(a);
    }
    return out;
}

// Generator file: {"surface": [g, n], "generators": [{"name": .., "images":
// {"x1": "..", ..}, "inverse": {..}}, ..]}
inline std::vector<FreeAutomorphism> automorphisms_from_json(const SurfaceModel& m, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators")) throw InvalidInput("generator file needs \"generators\"");
    if (j.contains("surface")) {
        const auto& s = j.at("surface");
        if (!s.is_array() || s.size() != 2 || s[0].get<int>() != m.genus() || s[1].get<int>() != m.punctures())
            throw InvalidInput("generator file is for a different surface than " + m.name());
    }
    std::vector<FreeAutomorphism> out;
    for (const auto& g : j.at("generators")) {
        FreeAutomorphism a = identity_automorphism(m);
        a.name = g.value("name", std::string("gen") + std::to_string(out.size()));
        for (const auto& [k, v] : g.at("images").items()) a.images[m.alphabet().index(k)] = m.parse(v.get<std::string>());
        for (const auto& [k, v] : g.at("inverse").items())
            a.inverse_images[m.alphabet().index(k)] = m.parse(v.get<std::string>());
        out.push_back(a);
    }
    return out;
}

inline nlohmann::json to_json(const SurfaceModel& m, const std::vector<FreeAutomorphism>& gens) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : gens) {
        nlohmann::json img, inv;
        for (std::size_t i = 0; i < m.rank(); ++i) {
            img[m.alphabet().name(i)] = m.format(a.images[i]);
            inv[m.alphabet().name(i)] = m.format(a.inverse_images[i]);
        }
        arr.push_back({{"name", a.name}, {"images", img}, {"inverse", inv}});
    }
    return {{"surface", {m.genus(), m.punctures()}}, {"generators", arr}};
}

} // namespace curvelab

#endif // CURVELAB_AUTOMORPHISM_HPP
