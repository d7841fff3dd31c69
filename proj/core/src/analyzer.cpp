#include "oct/analyzer.hpp"

#include <stdexcept>

#include "oct/pretty.hpp"

namespace oct {

namespace {

class Analysis {
  public:
    Analysis(const Program& p, const AnalyzerOptions& opts)
        : program_(p), opts_(opts) {
        result_.invariants.assign(p.n_locations, Octagon::bottom(p.var_count()));
    }

    AnalysisResult run() {
        Octagon entry = Octagon::top(program_.var_count());
        record(program_.entry, entry);
        exec_block(program_.body, std::move(entry));
        return std::move(result_);
    }

  private:
    void record(LocationId loc, const Octagon& state) {
        if (loc != kNoLoc) result_.invariants[loc] = state;
    }

    Octagon exec_block(const Block& b, Octagon state) {
        for (const Stmt& s : b) {
            state = exec_stmt(s, std::move(state));
            record(s.after_loc, state);
        }
        return state;
    }

    Octagon exec_stmt(const Stmt& s, Octagon in) {
        return std::visit(
            [&](const auto& n) -> Octagon {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                    return assign(in, n.var, *n.value);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    return exec_if(n, std::move(in));
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    return exec_while(n, std::move(in));
                } else {
                    return in;  // assert: checked separately, no state change
                }
            },
            s.node);
    }

    Octagon exec_if(const IfStmt& s, Octagon in) {
        Octagon then_in = guard(in, *s.cond, opts_.strictness);
        Octagon else_in = guard_negated(in, *s.cond, opts_.strictness);
        record(s.then_entry, then_in);
        Octagon then_out = exec_block(s.then_body, std::move(then_in));
        Octagon else_out = std::move(else_in);
        if (s.has_else) {
            record(s.else_entry, else_out);
            else_out = exec_block(s.else_body, std::move(else_out));
        }
        return join(then_out, else_out);
    }

    Octagon exec_while(const WhileStmt& s, Octagon in) {
        // Head iteration: head_0 = in guarded by the condition and strongly
        // closed once, then head_{n+1} = head_n widened with the guarded
        // strong closure of the body's exit state, until two consecutive
        // heads coincide. The widen outputs themselves are never closed;
        // closing them re-introduces entries and can make the sequence grow
        // forever.
        const std::size_t cap = widening_cap();
        Octagon head = strong_closure(guard(in, *s.cond, opts_.strictness));
        Octagon body_out = Octagon::bottom(program_.var_count());
        std::size_t iterations = 1;
        while (true) {
            record(s.body_entry, head);
            body_out = exec_block(s.body, head);
            Octagon contribution =
                guard(strong_closure(body_out), *s.cond, opts_.strictness);
            Octagon next = widen(head, contribution);
            ++iterations;
            if (next == head) break;
            head = std::move(next);
            if (iterations > cap) {
                throw std::logic_error("widening failed to stabilize within its bound");
            }
        }
        auto [it, inserted] = result_.loops.try_emplace(s.body_entry, LoopInfo{iterations});
        if (!inserted && it->second.iterations < iterations) {
            it->second.iterations = iterations;
        }
        // Exit state: entry and final body state, strong-closed, filtered by
        // the negated condition, joined.
        Octagon exit_entry = guard_negated(strong_closure(in), *s.cond, opts_.strictness);
        Octagon exit_body = guard_negated(strong_closure(body_out), *s.cond, opts_.strictness);
        return join(exit_entry, exit_body);
    }

    std::size_t widening_cap() const {
        const std::size_t dim = 2 * program_.var_count();
        return dim * dim + 2;
    }

    const Program& program_;
    const AnalyzerOptions& opts_;
    AnalysisResult result_;
};

void collect_asserts(const Block& b, const Program& p, const AnalysisResult& r,
                     const AnalyzerOptions& opts, std::vector<AssertOutcome>& out) {
    for (const Stmt& s : b) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AssertStmt>) {
                    const Octagon& inv = r.invariants[n.check_loc];
                    Octagon refuted = guard_negated(inv, *n.cond, opts.strictness);
                    out.push_back({n.check_loc, pretty(*n.cond, p.vars),
                                   refuted.is_bottom() ? AssertStatus::Proved
                                                       : AssertStatus::Unknown});
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    collect_asserts(n.then_body, p, r, opts, out);
                    collect_asserts(n.else_body, p, r, opts, out);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    collect_asserts(n.body, p, r, opts, out);
                }
            },
            s.node);
    }
}

}  // namespace

AnalysisResult analyze(const Program& p, const AnalyzerOptions& opts) {
    return Analysis(p, opts).run();
}

std::vector<AssertOutcome> check_asserts(const Program& p, const AnalysisResult& r,
                                         const AnalyzerOptions& opts) {
    std::vector<AssertOutcome> out;
    collect_asserts(p.body, p, r, opts, out);
    return out;
}

}  // namespace oct
