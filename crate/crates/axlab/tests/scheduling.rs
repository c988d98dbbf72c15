use axlab::Threaded;
use axlab_core::corpus::get_system;
use axlab_core::finder::independence_scan_with;
use axlab_core::pool::Sequential;

#[test]
fn scan_does_not_depend_on_workers() {
    let h = get_system("huntington").unwrap();
    let one = independence_scan_with(&h, 4, &Sequential).unwrap();
    for workers in [2, 4, 7] {
        assert_eq!(independence_scan_with(&h, 4, &Threaded::new(workers)).unwrap(), one);
    }
}
