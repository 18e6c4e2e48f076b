//! Helpers for multisets stored as sorted index vectors.

use alloc::vec::Vec;

/// Calls `visit` once per distinct sub-multiset of size `k` of the sorted slice.
pub(crate) fn for_each_submultiset<F: FnMut(&[u32])>(items: &[u32], k: usize, mut visit: F) {
    let mut buf = Vec::with_capacity(k);
    recurse(items, 0, k, &mut buf, &mut visit);
}

fn recurse<F: FnMut(&[u32])>(items: &[u32], start: usize, k: usize, buf: &mut Vec<u32>, visit: &mut F) {
    if buf.len() == k {
        visit(buf);
        return;
    }
    let need = k - buf.len();
    let mut pos = start;
    while pos + need <= items.len() {
        buf.push(items[pos]);
        recurse(items, pos + 1, k, buf, visit);
        buf.pop();
        // skip repeats so each distinct sub-multiset is produced once
        let v = items[pos];
        while pos < items.len() && items[pos] == v {
            pos += 1;
        }
    }
}

/// `whole - part + replacement`, all sorted; `part` must be a sub-multiset of `whole`.
pub(crate) fn replace(whole: &[u32], part: &[u32], replacement: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(whole.len() - part.len() + replacement.len());
    let mut p = 0;
    for &w in whole {
        if p < part.len() && part[p] == w {
            p += 1;
        } else {
            out.push(w);
        }
    }
    debug_assert_eq!(p, part.len(), "part is not a sub-multiset");
    out.extend_from_slice(replacement);
    out.sort_unstable();
    out
}
