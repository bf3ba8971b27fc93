#include "pci/annotation.hpp"
#include "pci/projection.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace pci {

std::vector<QueryResult> answer_query(const ConceptualGraph& query, const AnnotationStore& store,
                                      const Vocabulary& v, const AnswerOptions& options) {
    const ConceptualGraph effective =
        options.scope == QueryScope::Topic ? topic_query(query, v) : query;

    std::vector<const SegmentAnnotation*> work;
    work.reserve(store.size());
    for (const auto& [id, a] : store.annotations()) work.push_back(&a);

    // One slot per annotation, filled independently, so the merge below is
    // the sequential order whatever the interleaving.
    std::vector<std::optional<QueryResult>> slots(work.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size()) return;
            try {
                const SegmentAnnotation& a = *work[i];
                auto mappings = project(effective, a.graph, v);
                if (mappings.empty()) continue;
                QueryResult r;
                r.annotation_id = a.id;
                r.asset_id = a.segment.asset_id;
                r.start_ms = a.segment.start_ms;
                r.end_ms = a.segment.end_ms;
                r.match_count = mappings.size();
                r.mappings = std::move(mappings);
                slots[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(work.size());
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(work.size(), 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<QueryResult> results;
    for (auto& slot : slots) {
        if (slot) results.push_back(std::move(*slot));
    }
    std::stable_sort(results.begin(), results.end(), [](const QueryResult& a, const QueryResult& b) {
        if (a.match_count != b.match_count) return a.match_count > b.match_count;
        return a.annotation_id < b.annotation_id;
    });
    return results;
}

} // namespace pci
