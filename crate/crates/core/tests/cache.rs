use std::fs;
use std::sync::Arc;
use std::thread;

use liecore::cache::Cache;
use liecore::liealg::LieAlgebra;

#[test]
fn e6_structure_constants_round_trip_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let g = LieAlgebra::parse("E6").unwrap();
    let table = g.structure_constants().to_vec();
    cache.put("structure-E6", &table).unwrap();
    let back: Vec<Vec<(u32, i64)>> = cache.get("structure-E6").unwrap().unwrap();
    assert_eq!(serde_json::to_vec(&back).unwrap(), serde_json::to_vec(&table).unwrap());
    let first = fs::read(dir.path().join("structure-E6.json")).unwrap();
    cache.put("structure-E6", &back).unwrap();
    assert_eq!(fs::read(dir.path().join("structure-E6.json")).unwrap(), first);
}

#[test]
fn concurrent_writers_leave_one_valid_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(Cache::new(dir.path()).unwrap());
    let handles: Vec<_> = (0..8u64)
        .map(|t| {
            let cache = Arc::clone(&cache);
            thread::spawn(move || {
                let payload: Vec<u64> = (0..2000).map(|i| i * 8 + t).collect();
                for _ in 0..25 {
                    cache.put("shared", &payload).unwrap();
                    let seen: Vec<u64> = cache.get("shared").unwrap().expect("a complete entry");
                    assert_eq!(seen.len(), 2000);
                    let writer = seen[0];
                    assert!(seen.iter().enumerate().all(|(i, &x)| x == i as u64 * 8 + writer));
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, ["shared.json"]);
}
