use loopsmith::lti::*;
use nalgebra::DMatrix;

fn main() {
    let sys = DescriptorSystem::descriptor(
        DMatrix::identity(2, 2),
        DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 2.0]),
        DMatrix::from_row_slice(2, 1, &[1.0, 1.0]),
        DMatrix::from_row_slice(1, 2, &[1.0, 1.0]),
    )
    .unwrap();
    let modal = sys.modal().unwrap();
    println!("lambda: {:?}", modal.lambda);
    println!("input rows: {}", modal.input_rows);
    println!("output cols: {}", modal.output_cols);
    for i in 0..2 {
        println!("residue {i}: {}", modal.residue(i));
    }
    let keep = eigen_upper_half(&modal.lambda);
    println!("upper half: {keep:?}");
    let stable: Vec<usize> = keep.into_iter().filter(|&i| modal.lambda[i].re < 0.0).collect();
    println!("stable keep: {stable:?}");
    let sub = modal_subsystem(&modal, &stable, 1, 1).unwrap();
    println!("A: {} B: {} C: {}", sub.a(), sub.b(), sub.c());
    println!("H(1) = {:?}", sub.eval_siso(C64::new(1.0, 0.0)));
}
