#pragma once

#include <string>
#include <vector>

#include "betlab/harness/metrics.hpp"
#include "betlab/harness/trade_log.hpp"

namespace betlab::testing {

// Validation-set confusion matrix of the attention LSTM.
inline ConfusionMatrix validation_matrix() {
  return ConfusionMatrix(ConfusionMatrix::Counts{{{32, 7, 11, 9, 10},
                                                  {39, 9, 17, 10, 11},
                                                  {27, 6, 23, 9, 18},
                                                  {23, 13, 19, 9, 27},
                                                  {14, 8, 15, 10, 38}}});
}

// Same model on the held-out month.
inline ConfusionMatrix final_test_matrix() {
  return ConfusionMatrix(ConfusionMatrix::Counts{{{16, 3, 2, 2, 4},
                                                  {12, 6, 1, 5, 11},
                                                  {14, 4, 1, 3, 6},
                                                  {10, 2, 0, 3, 8},
                                                  {2, 5, 0, 5, 13}}});
}

// Published production log segment, decimal commas replaced.
inline std::vector<std::string> published_log_rows() {
  return {
      "0.00\t2\tNOT_OPEN\tHam_2nd_Sep\tNightster\t38189.27\t8\t5.5\t6.2\t5.1\tLB\t6\t4\t11.29\t-7.84\t0\t0\t0.00\t0.00",
      "0.00\t2\tNOT_OPEN\tHam_2nd_Sep\tTectonic\t18415.76\t8\t4.5\t3.95\t4.9\tBL\t6\t4\t13.92\t-8.16\t0\t0\t0.00\t0.00",
      "6.52\t1\tCLOSED\tFfosL_2nd_Sep\tMccool_Bannanas\t23465.96\t6\t4.9\t4.6\t5.2\tBL\t3\t3\t6.52\t-5.77\t4.9\t4.6\t100.00\t106.52",
      "-2.00\t1\tCLOSED\tHam_2nd_Sep\tKing_Of_Paradise\t15501.31\t6\t5.1\t5.5\t4.7\tLB\t4\t4\t7.27\t-8.51\t5.1\t5\t100.00\t102.00",
      "0.00\t1\tNOT_OPEN\tFfosL_2nd_Sep\tCabuchon\t22716.31\t7\t4.4\t4.1\t4.7\tBL\t3\t3\t7.32\t-6.38\t0\t0\t0.00\t0.00",
      "0.00\t1\tCLOSED\tFfosL_2nd_Sep\tMen_Dont_Cry\t24814.14\t7\t4.5\t4.9\t4.1\tLB\t4\t4\t8.16\t-9.76\t4.5\t4.5\t100.00\t100.00",
      "0.00\t2\tNOT_OPEN\tHam_2nd_Sep\tGeorge_Fenton\t20976.69\t9\t4.9\t4.3\t5.3\tBL\t6\t4\t13.95\t-7.55\t0\t0\t0.00\t0.00",
      "6.00\t1\tCLOSED\tBrig_2nd_Sep\tAdmiralofthesea\t20249.86\t9\t5.3\t5\t5.6\tBL\t3\t3\t6.00\t-5.36\t5.3\t5\t100.00\t106.00",
      "0.00\t1\tCLOSED\tMuss_3rd_Sep\tMishaal\t21280.96\t9\t5\t4.7\t5.3\tBL\t3\t3\t6.38\t-5.66\t5\t5\t100.00\t100.00",
      "11.11\t2\tCLOSED\tGood_3rd_Sep\tDeeds_Not_Words\t21824.36\t6\t6\t5.4\t6.8\tBL\t6\t4\t11.11\t-11.76\t6\t5.4\t100.00\t111.11",
      "0.00\t1\tCLOSED\tGood_3rd_Sep\tArgent_Knight\t45269.49\t9\t5.6\t5.3\t5.9\tBL\t3\t3\t5.66\t-5.08\t5.6\t5.6\t100.00\t100.00",
      "-5.77\t2\tCLOSED\tGood_3rd_Sep\tMinority_Interest\t15054.53\t10\t4.9\t4.3\t5.3\tBL\t6\t4\t13.95\t-7.55\t4.9\t5.2\t100.00\t94.23",
      "5.66\t2\tCLOSED\tGood_3rd_Sep\tSwift_Blade\t19614.89\t10\t5.6\t5\t6\tBL\t6\t4\t12.00\t-6.67\t5.6\t5.3\t100.00\t105.66",
      "0.00\t2\tNOT_OPEN\tLing_3rd_Sep\tProspera\t30635.19\t7\t4.8\t5.4\t4.4\tLB\t6\t4\t11.11\t-9.09\t0\t0\t0.00\t0.00",
      "10.71\t2\tCLOSED\tLing_3rd_Sep\tRock_God\t29429.46\t7\t5\t5.6\t4.6\tLB\t6\t4\t10.71\t-8.70\t5\t5.6\t100.00\t89.29",
      "2.27\t2\tCLOSED\tBath_4th_Sep\tKakapuka\t31543.94\t7\t4.5\t3.95\t4.9\tBL\t6\t4\t13.92\t-8.16\t4.5\t4.4\t100.00\t102.27",
      "2.04\t2\tCLOSED\tBath_4th_Sep\tDreams_Of_Glory\t31036.05\t7\t4.8\t5.4\t4.4\tLB\t6\t4\t11.11\t-9.09\t4.8\t4.9\t100.00\t97.96",
      "5.20\t2\tCLOSED\tBath_4th_Sep\tDevon_Diva\t6343.06\t6\t4.3\t3.85\t4.7\tBL\t6\t4\t11.69\t-8.51\t4.3\t4\t69.27\t74.47",
      "0.00\t2\tCLOSED\tKemp_4th_Sep\tFor_Posterity\t17928.36\t8\t4.6\t4\t5\tBL\t6\t4\t15.00\t-8.00\t4.6\t4.6\t100.00\t100.00",
      "0.00\t2\tNOT_OPEN\tSalis_5th_Sep\tMysterious_Man\t29961.6\t6\t4.2\t3.8\t4.6\tBL\t6\t4\t10.53\t-8.70\t0\t0\t0.00\t0.00",
      "0.00\t2\tNOT_OPEN\tSalis_5th_Sep\tNew_Rich\t14194.09\t6\t4.2\t3.8\t4.6\tBL\t6\t4\t10.53\t-8.70\t0\t0\t0.00\t0.00",
      "0.00\t1\tNOT_OPEN\tSalis_5th_Sep\tCatchanova\t19254.96\t7\t4.2\t3.95\t4.5\tBL\t3\t3\t6.33\t-6.67\t0\t0\t0.00\t0.00",
      "3.74\t1\tCLOSED\tSalis_5th_Sep\tSouth_Cape\t17128.67\t7\t4.3\t4.7\t3.95\tLB\t4\t4\t8.51\t-8.86\t4.3\t4.47\t100.00\t96.26",
      "-0.00\t1\tCLOSED\tNewc_6th_Sep\tRed_Pike\t17883.92\t10\t4.3\t4.7\t3.95\tLB\t4\t4\t8.51\t-8.86\t4.3\t4.3\t100.00\t100.00",
      "0.00\t2\tCLOSED\tNewc_6th_Sep\tNoble_Asset\t33583.39\t9\t4.3\t4.9\t3.95\tLB\t6\t4\t12.24\t-8.86\t4.3\t4.3\t100.00\t100.00",
      "-2.13\t2\tCLOSED\tNewc_6th_Sep\tPure_Impressions\t11972.8\t9\t4.6\t4\t5\tBL\t6\t4\t15.00\t-8.00\t4.6\t4.7\t100.00\t97.87",
      "0.00\t1\tCLOSED\tHayd_6th_Sep\tAshpan_Sam\t20740.66\t8\t4.3\t4.7\t3.95\tLB\t4\t4\t8.51\t-8.86\t4.3\t4.3\t93.25\t93.25",
      "0.00\t1\tNOT_OPEN\tHayd_6th_Sep\tAnomaly\t19408.38\t8\t5.8\t5.5\t6.2\tBL\t3\t3\t5.45\t-6.45\t0\t0\t0.00\t0.00",
      "0.00\t2\tNOT_OPEN\tKemp_7th_Sep\tMasterstroke\t26429.99\t10\t6\t5.4\t6.8\tBL\t6\t4\t11.11\t-11.76\t0\t0\t0.00\t0.00",
      "-3.77\t2\tCLOSED\tAscot_7th_Sep\tSteventon_Star\t10016.69\t7\t5.1\t4.5\t5.5\tBL\t6\t4\t13.33\t-7.27\t5.1\t5.3\t100.00\t96.23",
      "3.64\t2\tCLOSED\tAscot_7th_Sep\tForgive\t19005.23\t8\t5.3\t5.9\t4.9\tLB\t6\t4\t10.17\t-8.16\t5.3\t5.5\t100.00\t96.36",
      "0.00\t1\tNOT_OPEN\tWolv_7th_Sep\tLord_Buffhead\t48688.37\t10\t5.8\t6.4\t5.4\tLB\t4\t4\t9.38\t-7.41\t0\t0\t0.00\t0.00",
      "2.44\t2\tCLOSED\tFont_8th_Sep\tBrough_Academy\t13833.73\t7\t4.2\t3.8\t4.6\tBL\t6\t4\t10.53\t-8.70\t4.2\t4.1\t100.00\t102.44",
      "2.13\t2\tCLOSED\tFont_8th_Sep\tChilworth_Screamer\t18831.11\t7\t4.8\t4.2\t5.2\tBL\t6\t4\t14.29\t-7.69\t4.8\t4.7\t100.00\t102.13",
      "-0.00\t2\tCLOSED\tFont_8th_Sep\tThe_Tracey_Shuffle\t44132.1\t7\t4.1\t4.7\t3.85\tLB\t6\t4\t12.77\t-6.49\t4.1\t4.1\t100.00\t100.00",
      "-7.02\t1\tCLOSED\tFont_8th_Sep\tOvilia\t47113.2\t9\t5.3\t5\t5.6\tBL\t3\t3\t6.00\t-5.36\t5.3\t5.7\t100.00\t92.98",
      "0.00\t2\tNOT_OPEN\tHunt_9th_Sep\tBrimham_Boy\t19783.33\t9\t6\t7.2\t5.6\tLB\t6\t4\t16.67\t-7.14\t0\t0\t0.00\t0.00",
      "1.96\t1\tCLOSED\tHunt_9th_Sep\tTiny_Tenor\t10597.64\t6\t5\t5.4\t4.6\tLB\t4\t4\t7.41\t-8.70\t5\t5.1\t100.00\t98.04",
      "-5.13\t2\tCLOSED\tPerth_9th_Sep\tRathmoyle_House\t15105.65\t6\t4.1\t4.7\t3.85\tLB\t6\t4\t12.77\t-6.49\t4.1\t3.9\t100.00\t105.13",
      "4.55\t2\tCLOSED\tHunt_9th_Sep\tGetaway_Car\t43158.07\t7\t4.6\t4\t5\tBL\t6\t4\t15.00\t-8.00\t4.6\t4.4\t100.00\t104.55",
      "-4.44\t2\tCLOSED\tBrig_9th_Sep\tArlecchino\t34162.89\t6\t4.3\t3.85\t4.7\tBL\t6\t4\t11.69\t-8.51\t4.3\t4.5\t100.00\t95.56",
      "7.14\t1\tCLOSED\tBrig_9th_Sep\tKamchatka\t8723.94\t6\t4.5\t4.2\t4.8\tBL\t3\t3\t7.14\t-6.25\t4.5\t4.2\t100.00\t107.14",
      "2.08\t2\tCLOSED\tLeic_10th_Sep\tTatlisu\t32783.13\t7\t4.9\t4.3\t5.3\tBL\t6\t4\t13.95\t-7.55\t4.9\t4.8\t100.00\t102.08",
      "7.84\t2\tCLOSED\tWorc_10th_Sep\tGud_Day\t16815.93\t6\t4.7\t5.3\t4.3\tLB\t6\t4\t11.32\t-9.30\t4.7\t5.1\t100.00\t92.16",
      "0.00\t2\tNOT_OPEN\tBev_10th_Sep\tHadaj\t19770.65\t8\t4.3\t3.85\t4.7\tBL\t6\t4\t11.69\t-8.51\t0\t0\t0.00\t0.00",
      "-5.00\t1\tCLOSED\tBev_10th_Sep\tBondi_Beach_Boy\t16922.4\t8\t5.7\t5.4\t6\tBL\t3\t3\t5.56\t-5.00\t5.7\t6\t100.00\t95.00",
      "10.94\t2\tCLOSED\tBev_10th_Sep\tDubai_Dynamo\t20403.49\t8\t5.7\t6.6\t5.3\tLB\t6\t4\t13.64\t-7.55\t5.7\t6.4\t100.00\t89.06",
      "0.00\t2\tNOT_OPEN\tBev_10th_Sep\tStarlit_Cantata\t35090.79\t9\t5.1\t4.5\t5.5\tBL\t6\t4\t13.33\t-7.27\t0\t0\t0.00\t0.00",
      "-6.67\t2\tCLOSED\tUttox_11th_Sep\tTeak\t19655.05\t7\t5.6\t5\t6\tBL\t6\t4\t12.00\t-6.67\t5.6\t6\t100.00\t93.33",
  };
}

}  // namespace betlab::testing
