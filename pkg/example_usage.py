from shifted_orders import ShiftToolkit, ShiftedOrdersError
from shifted_orders.algebra_files import bundled_corpus_dir
from dotenv import load_dotenv
load_dotenv()
def example_usage():
    """Walk one algebra through the main computations"""

    path = bundled_corpus_dir() / "auslander_kx2.alg"
    try:
        tk = ShiftToolkit.from_file(path)

        print("Algebra:")
        info = tk.describe()
        print(f"Name: {info['algebra']}")
        print(f"Dimension: {info['dim']}")
        print(f"Cartan matrix: {info['cartan']}")

        prof = tk.profile()
        print(f"\ngldim = {prof.gldim}, domdim = {prof.domdim}, n = {prof.n}")

        # Level-1 shifted tilting module and its endomorphism algebra
        cert = tk.certify(1)
        print(f"\npd T = {cert.projective_dimension}, Ext^i(T, T) = {cert.self_extensions}")
        report = tk.gldim_report(1)
        print(f"gldim Γ = {report.gldim_gamma} <= gldim A = {report.gldim_lambda}: {report.holds}")

        for row in tk.theorem_sweep(1):
            print(f"d = {row.krull_dim}: {row.lhs} <= {row.rhs} is {row.verdict}")

    except ShiftedOrdersError as e:
        print(f"Toolkit Error: {e}")
    except Exception as e:
        print(f"Unexpected error: {e}")

def check_corpus():
    """Profile every bundled algebra"""
    for path in sorted(bundled_corpus_dir().glob("*.alg")):
        try:
            tk = ShiftToolkit.from_file(path)
            prof = tk.profile()
            print(f"{tk.name}: gldim {prof.gldim}, domdim {prof.domdim}, n {prof.n}")
        except ShiftedOrdersError as e:
            print(f"{path.name}: {e}")

if __name__ == "__main__":
    print("=== Basic Usage Example ===")
    example_usage()

    # print("\n=== Bundled Corpus ===")
    # check_corpus()
