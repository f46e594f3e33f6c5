#include "hxc/eigencalc.hpp"

#include "hxc/error.hpp"

namespace hxc {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

struct Certificate {
    std::vector<std::size_t> rows;
    Mat minv;
};

std::optional<Certificate> find_certificate(const Backend& b, const std::vector<Section>& s) {
    if (s.empty()) return Certificate{{}, Mat(0, 0)};
    Mat c = Mat::from_columns(s);
    std::vector<std::size_t> all(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) all[a] = a;
    for (const auto& rows : subsets(b.rank(), s.size())) {
        auto inv = inverse_unit(select(c, rows, all));
        if (inv) return Certificate{rows, inv->bind_all(b.chart().vars())};
    }
    return std::nullopt;
}

Scalar det_small(const std::vector<Vec>& cs, const Index& idx) {
    const std::size_t k = idx.size();
    Mat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = cs[i][static_cast<std::size_t>(idx[j])];
    return det(m);
}

std::string index_str(const Frame& f, const Index& idx) {
    std::string s;
    for (int i : idx) s += (s.empty() ? "" : ",") + std::to_string(i);
    (void)f;
    return s;
}

}  // namespace

Frame Frame::make(const Backend& b, std::vector<Section> sections, bool isotropic) {
    for (const auto& u : sections) b.require(u);
    for (auto& u : sections)
        for (auto& x : u) x = x.bind(b.chart().vars());
    auto cert = find_certificate(b, sections);
    if (!cert) fail("NoUnitMinor", "no minor of the frame has a nonzero constant determinant; supply a seed frame");
    if (isotropic)
        for (std::size_t a = 0; a < sections.size(); ++a)
            for (std::size_t c = a; c < sections.size(); ++c) {
                Scalar p = b.pairing(sections[a], sections[c]);
                if (!p.is_zero())
                    fail("NotIsotropic", "<s" + std::to_string(a) + ", s" + std::to_string(c) + "> = " + p.str());
            }
    return Frame(std::make_shared<Impl>(Impl{b, std::move(sections), std::move(cert->rows), std::move(cert->minv), isotropic}));
}

Frame Frame::greedy(const Backend& b, const std::vector<Section>& candidates, std::size_t limit, bool isotropic) {
    std::vector<Section> kept;
    for (const auto& c : candidates) {
        if (kept.size() >= limit) break;
        if (is_zero(c)) continue;
        kept.push_back(c);
        if (!find_certificate(b, kept)) kept.pop_back();
    }
    return make(b, kept, isotropic);
}

std::optional<Vec> Frame::try_coords(const Section& u) const {
    const Backend& b = impl_->b;
    b.require(u);
    Vec sub;
    for (std::size_t r : impl_->rows) sub.push_back(u[r]);
    Vec c = sub.empty() ? Vec{} : impl_->minv * sub;
    if (!section_eq(combine(c), u)) return std::nullopt;
    return c;
}

Vec Frame::coords(const Section& u) const {
    auto c = try_coords(u);
    if (!c) fail("NotInSpan", "section " + section_json(impl_->b, u).dump() + " is not in the frame's span");
    return *c;
}

Section Frame::combine(const Vec& c) const {
    Section out = impl_->b.zero();
    for (std::size_t a = 0; a < c.size(); ++a) out = out + c[a] * impl_->s[a];
    return out;
}

Frame Frame::conj() const {
    auto p = std::make_shared<Impl>(*impl_);
    for (auto& u : p->s) u = hxc::conj(u);
    p->minv = p->minv.conj();
    return Frame(std::move(p));
}

json Frame::involutivity_defect() const {
    const Backend& b = impl_->b;
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t c = 0; c < size(); ++c) {
            Section br = b.dorfman(impl_->s[a], impl_->s[c]);
            if (!try_coords(br))
                return json{{"U", "s" + std::to_string(a)}, {"V", "s" + std::to_string(c)}, {"bracket", section_json(b, br)}};
        }
    return nullptr;
}

void Frame::require_involutive() const {
    json w = involutivity_defect();
    if (!w.is_null()) fail("NotInvolutive", "frame bracket leaves the span: " + w.dump());
}

Scalar FrameForm::at(Index idx) const {
    const Scalar zero = frame_.backend().constant(0);
    int s = sort_sign(idx);
    if (s == 0) return zero;
    auto it = comps_.find(idx);
    if (it == comps_.end()) return zero;
    return s > 0 ? it->second : -it->second;
}

void FrameForm::add(Index idx, const Scalar& v) {
    if (idx.size() != degree_) fail("ShapeError", "index length does not match form degree");
    for (int i : idx)
        if (i < 0 || static_cast<std::size_t>(i) >= frame_.size()) fail("ShapeError", "frame index out of range");
    int s = sort_sign(idx);
    if (s == 0 || v.is_zero()) return;
    Scalar val = v.bind(frame_.backend().chart().vars());
    auto it = comps_.find(idx);
    if (it == comps_.end()) {
        comps_.emplace(idx, s > 0 ? val : -val);
        return;
    }
    it->second += s > 0 ? val : -val;
    if (it->second.is_zero()) comps_.erase(it);
}

Scalar FrameForm::eval_coords(const std::vector<Vec>& cs) const {
    if (cs.size() != degree_) fail("ShapeError", "wrong number of arguments for form evaluation");
    Scalar out = frame_.backend().constant(0);
    if (degree_ == 0) return at({});
    for (const auto& [idx, v] : comps_) out += v * det_small(cs, idx);
    return out;
}

Scalar FrameForm::eval(const std::vector<Section>& us) const {
    std::vector<Vec> cs;
    for (const auto& u : us) cs.push_back(frame_.coords(u));
    return eval_coords(cs);
}

FrameForm FrameForm::conj() const {
    FrameForm r(frame_.conj(), degree_);
    for (const auto& [idx, v] : comps_) r.comps_.emplace(idx, v.conj());
    return r;
}

json FrameForm::to_json() const {
    json j = json::object();
    for (const auto& [idx, v] : comps_) j[index_str(frame_, idx)] = v.str();
    return j;
}

FrameForm& FrameForm::operator+=(const FrameForm& o) {
    if (frame_ != o.frame_) fail("FrameMismatch", "forms live on different frames");
    if (degree_ != o.degree_) fail("ShapeError", "degree mismatch");
    for (const auto& [idx, v] : o.comps_) add(idx, v);
    return *this;
}

FrameForm operator-(const FrameForm& a) {
    FrameForm r(a.frame_, a.degree_);
    for (const auto& [idx, v] : a.comps_) r.comps_.emplace(idx, -v);
    return r;
}

FrameForm operator*(const Scalar& s, const FrameForm& a) {
    FrameForm r(a.frame_, a.degree_);
    for (const auto& [idx, v] : a.comps_) r.add(idx, s * v);
    return r;
}

bool operator==(const FrameForm& a, const FrameForm& b) {
    if (a.degree_ != b.degree_ || a.frame_.size() != b.frame_.size()) return false;
    if (a.comps_.size() != b.comps_.size()) return false;
    for (const auto& [idx, v] : a.comps_) {
        auto it = b.comps_.find(idx);
        if (it == b.comps_.end() || it->second != v) return false;
    }
    return true;
}

FrameForm tabulate(const Frame& f, unsigned degree, const std::function<Scalar(const std::vector<Section>&)>& fn) {
    FrameForm w(f, degree);
    for (const auto& idx : subsets(f.size(), degree)) {
        std::vector<Section> args;
        Index ii;
        for (std::size_t a : idx) {
            args.push_back(f[a]);
            ii.push_back(static_cast<int>(a));
        }
        w.add(ii, fn(args));
    }
    return w;
}

FrameForm pullback(const Frame& f, const DiffForm& alpha) {
    const Backend& b = f.backend();
    if (!b.is_chart()) fail("UnsupportedOnPoint", "pullback needs a chart backend");
    require_same_chart(b.chart(), alpha.chart());
    return tabulate(f, alpha.degree(), [&](const std::vector<Section>& us) {
        std::vector<Vec> xs;
        for (const auto& u : us) xs.push_back(b.anchor_vec(u));
        Scalar out = b.constant(0);
        for (const auto& [idx, v] : alpha.comps()) out += v * det_small(xs, idx);
        return out;
    });
}

FrameForm two_form_of(const Frame& f, const Endo& w) {
    require_same_backend(f.backend(), w.backend());
    return tabulate(f, 2, [&](const std::vector<Section>& us) { return f.backend().pairing(w(us[0]), us[1]); });
}

FrameForm change_frame(const FrameForm& w, const Frame& target) {
    return tabulate(target, w.degree(), [&](const std::vector<Section>& us) { return w.eval(us); });
}

DualPair eigenframe(const Endo& j, std::optional<std::vector<Section>> seed, GaussRat scale) {
    const Backend& b = j.backend();
    if (is_orthogonal(j).status != Status::Pass || squares_to_minus_one(j).status != Status::Pass)
        fail("NotComplexStructure", "J must be orthogonal with J^2 = -1");
    if (j.mat().conj() != j.mat()) fail("NotComplexStructure", "J must be real");
    if (b.rank() % 2 != 0) fail("NotComplexStructure", "odd rank");
    const std::size_t m = b.rank() / 2;
    const Scalar minus_i(GaussRat(0, -1));
    Frame lstar = [&] {
        if (seed) {
            if (seed->size() != m) fail("ShapeError", "seed frame must have rank/2 sections");
            for (const auto& s : *seed)
                if (!section_eq(j(s), minus_i * s)) fail("NotEigen", "seed section is not in the -i eigenbundle");
            return Frame::make(b, *seed, true);
        }
        std::vector<Section> cand;
        Endo proj = Endo::identity(b) + Scalar(GaussRat::I()) * j;
        for (std::size_t a = 0; a < b.rank(); ++a) cand.push_back(proj(b.frame(a)));
        Frame f = Frame::greedy(b, cand, m, true);
        if (f.size() != m) fail("NoUnitMinor", "projected frame has no certified minor of full rank; supply a seed");
        return f;
    }();
    Frame l = lstar.conj();
    Mat g(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) g(a, c) = b.pairing(l[a], lstar[c]) * scale;
    auto ginv = inverse_unit(g);
    if (!ginv) fail("NoUnitMinor", "duality matrix between L and L* is not unimodular");
    std::vector<Section> dual;
    for (std::size_t a = 0; a < m; ++a) {
        Section y = b.zero();
        for (std::size_t c = 0; c < m; ++c) y = y + (*ginv)(a, c) * l[c];
        dual.push_back(y);
    }
    return DualPair{j, lstar, l, Frame::make(b, dual, true), g, scale};
}

namespace {

// c[a][b] = coordinates of s_a o s_b in the frame.
std::vector<std::vector<Vec>> structure(const Frame& f) {
    const Backend& b = f.backend();
    std::vector<std::vector<Vec>> c(f.size(), std::vector<Vec>(f.size()));
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t d = 0; d < f.size(); ++d) {
            auto co = f.try_coords(b.dorfman(f[a], f[d]));
            if (!co) fail("NotInvolutive", "frame bracket leaves the span: " + f.involutivity_defect().dump());
            c[a][d] = *co;
        }
    return c;
}

Index without(const Index& idx, std::size_t r) {
    Index out;
    for (std::size_t k = 0; k < idx.size(); ++k)
        if (k != r) out.push_back(idx[k]);
    return out;
}

}  // namespace

FrameForm algebroid_d(const FrameForm& w) {
    const Frame& f = w.frame();
    if (!f.isotropic()) fail("NotIsotropic", "algebroid differential needs an isotropic frame");
    const Backend& b = f.backend();
    auto c = structure(f);
    const unsigned k = w.degree();
    FrameForm out(f, k + 1);
    for (const auto& sub : subsets(f.size(), k + 1)) {
        Index idx(sub.begin(), sub.end());
        Scalar v = b.constant(0);
        for (std::size_t r = 0; r <= k; ++r) {
            Scalar t = b.anchor(f[static_cast<std::size_t>(idx[r])], w.at(without(idx, r)));
            v += r % 2 == 0 ? t : -t;
        }
        for (std::size_t r = 0; r <= k; ++r)
            for (std::size_t s = r + 1; s <= k; ++s) {
                Index rest = without(without(idx, s), r);
                const Vec& br = c[static_cast<std::size_t>(idx[r])][static_cast<std::size_t>(idx[s])];
                Scalar t = b.constant(0);
                for (std::size_t l = 0; l < f.size(); ++l) {
                    if (br[l].is_zero()) continue;
                    Index full{static_cast<int>(l)};
                    full.insert(full.end(), rest.begin(), rest.end());
                    t += br[l] * w.at(full);
                }
                v += (r + s) % 2 == 0 ? t : -t;
            }
        out.add(idx, v);
    }
    return out;
}

FrameForm interior(const Section& x, const FrameForm& w) {
    const Frame& f = w.frame();
    if (w.degree() == 0) fail("ShapeError", "interior product of a function");
    Vec cx = f.coords(x);
    FrameForm out(f, w.degree() - 1);
    for (const auto& sub : subsets(f.size(), w.degree() - 1)) {
        Index idx(sub.begin(), sub.end());
        Scalar v = f.backend().constant(0);
        for (std::size_t a = 0; a < f.size(); ++a) {
            if (cx[a].is_zero()) continue;
            Index full{static_cast<int>(a)};
            full.insert(full.end(), idx.begin(), idx.end());
            v += cx[a] * w.at(full);
        }
        out.add(idx, v);
    }
    return out;
}

FrameForm algebroid_lie(const Section& x, const FrameForm& w) {
    if (w.degree() == 0) {
        FrameForm out(w.frame(), 0);
        out.add({}, w.frame().backend().anchor(x, w.at({})));
        (void)w.frame().coords(x);
        return out;
    }
    return interior(x, algebroid_d(w)) + algebroid_d(interior(x, w));
}

FrameForm schouten_L(const DualPair& p, const FrameForm& a, const FrameForm& b) {
    if (a.frame() != p.lstar || b.frame() != p.lstar)
        fail("FrameMismatch", "Schouten arguments must be given on the pair's L_J* frame");
    if (a.degree() == 0 || b.degree() == 0) fail("ShapeError", "Schouten bracket here needs positive degrees");
    const Frame& y = p.ldual;
    const Backend& be = y.backend();
    auto c = structure(y);
    const std::size_t m = y.size();
    FrameForm out(p.lstar, a.degree() + b.degree() - 1);
    const Scalar one = be.constant(1);
    // Overall (-1)^(pq+1) on top of the decomposable expansion: sections keep the plain bracket and
    // bivectors follow the contraction formula -<L_X eta - L_Y xi + d<xi, Y>, Z> - <[X, Y], zeta>.
    const std::size_t flip = (a.degree() * b.degree() + 1) % 2;
    for (const auto& [I, f] : a.comps())
        for (const auto& [J, g] : b.comps())
            for (std::size_t i = 0; i < I.size(); ++i)
                for (std::size_t j = 0; j < J.size(); ++j) {
                    const std::size_t ia = static_cast<std::size_t>(I[i]), jb = static_cast<std::size_t>(J[j]);
                    const Scalar& cf = i == 0 ? f : one;
                    const Scalar& cg = j == 0 ? g : one;
                    // [cf Y_ia, cg Y_jb]
                    Vec br(m, be.constant(0));
                    for (std::size_t l = 0; l < m; ++l) br[l] = cf * cg * c[ia][jb][l];
                    br[jb] += cf * be.anchor(y[ia], cg);
                    br[ia] -= cg * be.anchor(y[jb], cf);
                    Scalar mult = (i != 0 ? f : one) * (j != 0 ? g : one);
                    if ((i + j + flip) % 2 == 1) mult = -mult;
                    Index rest = without(I, i);
                    Index restJ = without(J, j);
                    rest.insert(rest.end(), restJ.begin(), restJ.end());
                    for (std::size_t l = 0; l < m; ++l) {
                        if (br[l].is_zero()) continue;
                        Index full{static_cast<int>(l)};
                        full.insert(full.end(), rest.begin(), rest.end());
                        out.add(full, mult * br[l]);
                    }
                }
    return out;
}

Report subalgebroid_check(const Frame& sub, const DualPair& p, const FrameForm& omega) {
    if (omega.frame() != p.lstar) fail("FrameMismatch", "Omega must live on the pair's L_J* frame");
    if (omega.degree() != 2) fail("ShapeError", "Omega must be a 2-form");
    std::vector<Vec> cs;
    for (const auto& s : sub.sections()) cs.push_back(p.lstar.coords(s));
    Report rep;
    rep.title = "subalgebroid_check";
    rep.add("isotropic for the pairing", sub.isotropic());
    json defect = sub.involutivity_defect();
    rep.add("involutive", defect.is_null(), defect);
    json bad = nullptr;
    for (std::size_t a = 0; a < cs.size() && bad.is_null(); ++a)
        for (std::size_t c = a + 1; c < cs.size(); ++c) {
            Scalar v = omega.eval_coords({cs[a], cs[c]});
            if (!v.is_zero()) {
                bad = json{{"U", "s" + std::to_string(a)}, {"V", "s" + std::to_string(c)}, {"Omega", v.str()}};
                break;
            }
        }
    rep.add("Omega-isotropic", bad.is_null(), bad);
    rep.add("maximal: rank = rank L_J* / 2", 2 * sub.size() == p.lstar.size(),
            json{{"rank", static_cast<long>(sub.size())}, {"rank L_J*", static_cast<long>(p.lstar.size())}});
    rep.data["Lagrangian"] = rep.passed();
    return rep;
}

Frame lagrangian_from_dirac(const DualPair& p, const std::vector<Section>& dirac) {
    const Backend& b = p.J.backend();
    Endo proj = GaussRat::frac(1, 2) * (Endo::identity(b) + Scalar(GaussRat::I()) * p.J);
    std::vector<Section> cand;
    for (const auto& d : dirac) cand.push_back(proj(d));
    return Frame::greedy(b, cand, p.lstar.size(), true);
}

json frame_json(const Frame& f) {
    json j = json::array();
    for (const auto& s : f.sections()) j.push_back(section_json(f.backend(), s));
    return j;
}

}  // namespace hxc
