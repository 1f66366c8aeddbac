# python
import sys
from cli_io import build_parser, job_from_args, run_job


def main(argv=None) -> int:
    """python main.py <real|count|member|track> ...，返回退出码"""
    args = build_parser().parse_args(argv)
    return run_job(job_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
