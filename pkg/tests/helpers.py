import itertools

from multispinal.documents import instance_from_document, instance_to_document

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def words(alphabet_size, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(alphabet_size), repeat=n)


def reorder_A(instance, order):
    """Same instance with A's elements declared in ``order`` (a permutation of indices)."""
    doc = instance_to_document(instance)
    labels = doc["A"]["elements"]
    table = doc["A"]["table"]
    doc["A"] = {
        "kind": "table",
        "elements": [labels[i] for i in order],
        "table": [[table[i][j] for j in order] for i in order],
    }
    return instance_from_document(doc)
