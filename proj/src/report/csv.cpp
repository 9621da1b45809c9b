#include "radcom/report/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace radcom::report {

namespace {
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
}  // namespace

std::string history_csv(const train::TrainHistory& h) {
    std::ostringstream os;
    os << "epoch,train_loss,train_loss_mod,train_loss_sig,train_acc_mod,train_acc_sig,"
          "val_loss,val_loss_mod,val_loss_sig,val_acc_mod,val_acc_sig\n";
    for (const auto& r : h.rows) {
        os << r.epoch << ',' << num(r.train.loss) << ',' << num(r.train.loss_mod) << ',' << num(r.train.loss_sig)
           << ',' << num(r.train.acc_mod) << ',' << num(r.train.acc_sig) << ',' << num(r.val.loss) << ','
           << num(r.val.loss_mod) << ',' << num(r.val.loss_sig) << ',' << num(r.val.acc_mod) << ','
           << num(r.val.acc_sig) << '\n';
    }
    os << "# best_epoch=" << h.best_epoch << " stopped_epoch=" << h.stopped_epoch
       << " early_stopped=" << (h.early_stopped ? 1 : 0) << " final_val_loss=" << num(h.final_val.loss)
       << " final_val_acc_mod=" << num(h.final_val.acc_mod) << " final_val_acc_sig=" << num(h.final_val.acc_sig)
       << '\n';
    return os.str();
}

std::string eval_csv(const train::EvalReport& r) {
    std::ostringstream os;
    os << "snr_db,acc_mod,acc_sig,n_records\n";
    for (std::size_t i = 0; i < r.snr_levels.size(); ++i)
        os << r.snr_levels[i] << ',' << num(r.acc_mod[i]) << ',' << num(r.acc_sig[i]) << ',' << r.n_records[i]
           << '\n';
    os << "# overall_acc_mod=" << num(r.overall_mod) << " overall_acc_sig=" << num(r.overall_sig)
       << " cm_snr_db=" << r.cm_snr_db << '\n';
    return os.str();
}

std::string confusion_csv(const std::vector<std::vector<int>>& matrix, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "true\\pred";
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        os << names[i];
        for (int v : matrix[i]) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

std::string weight_sweep_csv(const std::vector<train::WeightSweepPoint>& points) {
    std::ostringstream os;
    os << "w_mod,w_sig,acc_mod,acc_sig,epochs_run\n";
    for (const auto& p : points)
        os << num(p.w_mod) << ',' << num(p.w_sig) << ',' << num(p.acc_mod) << ',' << num(p.acc_sig) << ','
           << p.epochs_run << '\n';
    return os.str();
}

std::string density_sweep_csv(const std::vector<train::DensitySweepPoint>& points) {
    std::ostringstream os;
    os << "config,params,epochs_run,best_epoch,final_val_loss,overall_acc_mod,overall_acc_sig\n";
    for (const auto& p : points)
        os << '"' << p.label << "\"," << p.param_count << ',' << p.history.stopped_epoch << ','
           << p.history.best_epoch << ',' << num(p.history.final_val.loss) << ',' << num(p.report.overall_mod)
           << ',' << num(p.report.overall_sig) << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace radcom::report
